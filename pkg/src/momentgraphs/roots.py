"""Cartan data for the finite root systems A1, A2 and their affinizations.

Weights are rational vectors in the basis of simple roots.  Coroots are
written in the basis of simple coroots, and an affine coroot carries one
extra coordinate: the coefficient of the central element ``c``.  All
arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Vec = tuple  # tuple of Fraction, simple-root coordinates

CARTAN_TABLE = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
}


def as_vec(coords: Iterable) -> Vec:
    return tuple(Fraction(c) for c in coords)


def vadd(a: Sequence, b: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k, a: Sequence) -> Vec:
    return tuple(k * x for x in a)


def is_integral(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


# small dense matrices (tuples of rows) over the rationals

def mat_vec(M: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) for row in M)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    cols = list(zip(*B))
    return tuple(tuple(sum((Fraction(a) * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in A)


def mat_identity(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_inverse(M: Sequence[Sequence]) -> tuple:
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class AffineRoot:
    """The real affine root ``finite + level * delta``."""

    finite: Vec
    level: int

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(tuple(-x for x in self.finite), -self.level)

    def is_positive(self) -> bool:
        if self.level != 0:
            return self.level > 0
        return _is_positive_finite(self.finite)


def _is_positive_finite(v: Sequence) -> bool:
    nz = [x for x in v if x != 0]
    if not nz:
        raise ValueError("zero vector is not a root")
    return nz[0] > 0


@dataclass(frozen=True)
class AffineCoroot:
    """Element of the lattice spanned by the simple coroots and ``c``."""

    finite: Vec
    c_coeff: Fraction

    @classmethod
    def from_tuple(cls, t: Sequence) -> "AffineCoroot":
        t = as_vec(t)
        return cls(t[:-1], t[-1])

    def as_tuple(self) -> Vec:
        return tuple(self.finite) + (self.c_coeff,)

    def is_zero(self) -> bool:
        return self.c_coeff == 0 and all(x == 0 for x in self.finite)

    def __neg__(self) -> "AffineCoroot":
        return AffineCoroot(tuple(-x for x in self.finite), -self.c_coeff)

    def __add__(self, other: "AffineCoroot") -> "AffineCoroot":
        return AffineCoroot(vadd(self.finite, other.finite), self.c_coeff + other.c_coeff)

    def __sub__(self, other: "AffineCoroot") -> "AffineCoroot":
        return self + (-other)

    def scale(self, k) -> "AffineCoroot":
        return AffineCoroot(vscale(k, self.finite), k * self.c_coeff)

    def __str__(self) -> str:
        return format_coroot(self.as_tuple())


def format_coroot(t: Sequence, names: Sequence[str] | None = None) -> str:
    """Human readable form such as ``-a+2c`` or ``a+b+c``."""
    t = as_vec(t)
    if names is None:
        names = ["a", "b", "g"][: len(t) - 1] + ["c"]
    parts = []
    for k, name in zip(t, names):
        if k == 0:
            continue
        if k == 1:
            s = name
        elif k == -1:
            s = "-" + name
        else:
            s = f"{k}{name}"
        parts.append(s)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


class FiniteRootSystem:
    """Finite root system of type A1 or A2 with its affine data."""

    def __init__(self, cartan_type: str):
        if cartan_type not in CARTAN_TABLE:
            raise ValueError(f"unsupported root system type {cartan_type!r}")
        self.type = cartan_type
        self.bilinear_form = tuple(tuple(Fraction(x) for x in row) for row in CARTAN_TABLE[cartan_type])
        self.rank = len(self.bilinear_form)
        self.simple_roots = tuple(
            tuple(Fraction(int(i == j)) for j in range(self.rank)) for i in range(self.rank)
        )
        self.positive_roots = self._positive_roots()
        self.roots = self.positive_roots + tuple(vscale(-1, a) for a in self.positive_roots)
        self.highest_root = max(self.positive_roots, key=lambda a: (sum(a), a))

    def __repr__(self) -> str:
        return f"FiniteRootSystem({self.type!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteRootSystem) and other.type == self.type

    def __hash__(self) -> int:
        return hash(self.type)

    def _positive_roots(self) -> tuple:
        # closure of simple roots under simple reflections, keeping positives
        found = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            new = []
            for a in frontier:
                for s in range(self.rank):
                    b = self.simple_reflection(s, a)
                    if all(x >= 0 for x in b) and b not in found:
                        found.add(b)
                        new.append(b)
            frontier = new
        return tuple(sorted(found, key=lambda a: (sum(a), tuple(-x for x in a))))

    # -- the form ---------------------------------------------------------
    def form(self, lam: Sequence, mu: Sequence) -> Fraction:
        B = self.bilinear_form
        return sum(
            (Fraction(lam[i]) * B[i][j] * mu[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def coroot_weight(self, alpha: Sequence) -> Vec:
        """``2 alpha / (alpha, alpha)`` as a vector of weight space."""
        return vscale(Fraction(2) / self.form(alpha, alpha), as_vec(alpha))

    def coroot_coords(self, alpha: Sequence) -> Vec:
        """Coordinates of the coroot of ``alpha`` in the simple-coroot basis."""
        n = self.form(alpha, alpha)
        return tuple(
            Fraction(alpha[i]) * self.bilinear_form[i][i] / n for i in range(self.rank)
        )

    def coroot_to_weight(self, cor: Sequence) -> Vec:
        """Inverse of :meth:`coroot_coords` on arbitrary coroot-lattice vectors."""
        return tuple(Fraction(cor[i]) * 2 / self.bilinear_form[i][i] for i in range(self.rank))

    def coroot_coords_of_weight(self, lam: Sequence) -> Vec:
        return tuple(Fraction(lam[i]) * self.bilinear_form[i][i] / 2 for i in range(self.rank))

    def pairing(self, lam: Sequence, cor: Sequence) -> Fraction:
        """``<lam, cor>`` with ``cor`` in simple-coroot coordinates."""
        return self.form(lam, self.coroot_to_weight(cor))

    def is_root(self, alpha: Sequence) -> bool:
        return as_vec(alpha) in self.roots

    def simple_reflection(self, i: int, lam: Sequence) -> Vec:
        return self.reflect_finite(self.simple_roots[i], lam)

    def reflect_finite(self, alpha: Sequence, lam: Sequence) -> Vec:
        k = self.form(lam, self.coroot_weight(alpha))
        return vsub(as_vec(lam), vscale(k, alpha))

    # -- lattices and special vectors ------------------------------------
    @cached_property
    def fundamental_coweights(self) -> tuple:
        """Weight-space vectors ``w_i`` with ``(w_i, alpha_j) = delta_ij``."""
        inv = mat_inverse(self.bilinear_form)
        return tuple(tuple(inv[j][i] for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def rho(self) -> Vec:
        """Half the sum of the positive coroots, as a weight-space vector."""
        total = (Fraction(0),) * self.rank
        for a in self.positive_roots:
            total = vadd(total, self.coroot_weight(a))
        return vscale(Fraction(1, 2), total)

    def in_coweight_lattice(self, lam: Sequence) -> bool:
        return all(self.form(lam, a).denominator == 1 for a in self.simple_roots)

    def in_coroot_lattice(self, lam: Sequence) -> bool:
        # simple coroots span the integer coordinates in the simply laced case
        cor = tuple(Fraction(lam[i]) * self.bilinear_form[i][i] / 2 for i in range(self.rank))
        return is_integral(cor)

    @cached_property
    def theta_coefficients(self) -> tuple:
        """Coefficients of the highest coroot in the simple-coroot basis."""
        return tuple(int(x) for x in self.coroot_coords(self.highest_root))

    @cached_property
    def alcove_vertices(self) -> tuple:
        """Vertices of the fundamental alcove; entry ``i`` is opposite the ``s_i`` wall."""
        verts = [(Fraction(0),) * self.rank]
        for i, w in enumerate(self.fundamental_coweights):
            verts.append(vscale(Fraction(1, self.theta_coefficients[i]), w))
        return tuple(verts)

    @cached_property
    def alcove_centroid(self) -> Vec:
        total = (Fraction(0),) * self.rank
        for v in self.alcove_vertices:
            total = vadd(total, v)
        return vscale(Fraction(1, len(self.alcove_vertices)), total)

    # -- affine data ------------------------------------------------------
    @cached_property
    def affine_simple_roots(self) -> tuple:
        """``(alpha_1, ..., alpha_r, -theta + delta)``; index 0 is the affine one."""
        theta = self.highest_root
        return (AffineRoot(vscale(-1, theta), 1),) + tuple(
            AffineRoot(a, 0) for a in self.simple_roots
        )

    def affine_coroot(self, r: AffineRoot) -> AffineCoroot:
        if not self.is_root(r.finite):
            raise ValueError(f"{r.finite} is not a root of {self.type}")
        n = self.form(r.finite, r.finite)
        return AffineCoroot(self.coroot_coords(r.finite), Fraction(2 * r.level) / n)

    def reflect(self, r: AffineRoot, lam: Sequence) -> Vec:
        """``s_alpha(lam) - n * coroot(alpha)`` for ``r = alpha + n delta``."""
        if not self.is_root(r.finite):
            raise ValueError(f"{r.finite} is not a root of {self.type}")
        return vsub(self.reflect_finite(r.finite, lam), vscale(r.level, self.coroot_weight(r.finite)))

    def positive_affine_root(self, r: AffineRoot) -> AffineRoot:
        return r if r.is_positive() else -r

    def lattice_basis(self) -> list[str]:
        return [f"a{i + 1}_check" for i in range(self.rank)] + ["c"]


def build_root_system(cartan_type: str) -> FiniteRootSystem:
    return _cache(cartan_type)


_SYSTEMS: dict[str, FiniteRootSystem] = {}


def _cache(t: str) -> FiniteRootSystem:
    if t not in _SYSTEMS:
        _SYSTEMS[t] = FiniteRootSystem(t)
    return _SYSTEMS[t]
