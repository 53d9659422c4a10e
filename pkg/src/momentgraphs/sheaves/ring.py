"""Graded polynomial rings on the label lattice, their quotients by one linear
form, and degree slices of free modules over either.

Each variable is a basis vector of the label lattice.  Internally degrees
count variables; the geometric grading doubles them.
"""
from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Sequence

from ..fields import CoefficientField

Poly = dict  # exponent tuple -> field element


class PolyRing:
    def __init__(self, nvars: int, field: CoefficientField, names: Sequence[str] | None = None):
        self.nvars = nvars
        self.field = field
        self.names = list(names) if names else [f"x{i}" for i in range(nvars)]
        self._mono: dict[int, list] = {}
        self._mono_index: dict[int, dict] = {}
        self._quotients: dict[tuple, QuotientRing] = {}

    def __repr__(self) -> str:
        return f"PolyRing({self.nvars} vars over {self.field.name})"

    # -- monomials -------------------------------------------------------------
    def monomials(self, k: int) -> list:
        if k < 0:
            return []
        if k not in self._mono:
            out = []
            for combo in combinations_with_replacement(range(self.nvars), k):
                e = [0] * self.nvars
                for i in combo:
                    e[i] += 1
                out.append(tuple(e))
            out.sort(reverse=True)
            self._mono[k] = out
            self._mono_index[k] = {m: i for i, m in enumerate(out)}
        return self._mono[k]

    def mono_index(self, k: int) -> dict:
        self.monomials(k)
        return self._mono_index.get(k, {})

    def dim(self, k: int) -> int:
        return len(self.monomials(k))

    # -- polynomials ---------------------------------------------------------
    def const(self, c) -> Poly:
        c = self.field.elt(c)
        return {} if c == 0 else {(0,) * self.nvars: c}

    def one(self) -> Poly:
        return self.const(1)

    def var(self, i: int) -> Poly:
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): self.field.one}

    def linear(self, coeffs: Sequence) -> Poly:
        out = {}
        for i, c in enumerate(coeffs):
            c = self.field.elt(c)
            if c != 0:
                e = [0] * self.nvars
                e[i] = 1
                out[tuple(e)] = c
        return out

    @staticmethod
    def add(p: Poly, q: Poly) -> Poly:
        out = dict(p)
        for m, c in q.items():
            v = out.get(m)
            v = c if v is None else v + c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return out

    def sub(self, p: Poly, q: Poly) -> Poly:
        return self.add(p, self.scale(-1, q))

    def scale(self, c, p: Poly) -> Poly:
        c = self.field.elt(c)
        if c == 0:
            return {}
        return {m: c * v for m, v in p.items()}

    @staticmethod
    def mul(p: Poly, q: Poly) -> Poly:
        out: dict = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                v = c1 * c2 if v is None else v + c1 * c2
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
        return out

    def power(self, p: Poly, n: int) -> Poly:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, p)
        return out

    @staticmethod
    def mono_mul(m: tuple, p: Poly) -> Poly:
        return {tuple(a + b for a, b in zip(m, k)): c for k, c in p.items()}

    @staticmethod
    def degree(p: Poly) -> int | None:
        if not p:
            return None
        return sum(next(iter(p)))

    def apply_linear_map(self, p: Poly, M: Sequence[Sequence]) -> Poly:
        """Algebra automorphism sending the variable ``x_j`` to ``sum_i M[i][j] x_i``."""
        images = [self.linear([M[i][j] for i in range(self.nvars)]) for j in range(self.nvars)]
        out: Poly = {}
        for m, c in p.items():
            term = self.const(c)
            for j, e in enumerate(m):
                for _ in range(e):
                    term = self.mul(term, images[j])
            out = self.add(out, term)
        return out

    def to_vector(self, p: Poly, k: int) -> list:
        idx = self.mono_index(k)
        v = [self.field.zero] * len(idx)
        for m, c in p.items():
            v[idx[m]] = c
        return v

    def from_vector(self, v: Sequence, k: int) -> Poly:
        return {m: c for m, c in zip(self.monomials(k), v) if c != 0}

    def format(self, p: Poly) -> str:
        if not p:
            return "0"
        terms = []
        for m in sorted(p, reverse=True):
            c = self.field.to_fraction(p[m])
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(self.names, m) if e
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        s = terms[0]
        for t in terms[1:]:
            s += t if t.startswith("-") else "+" + t
        return s

    # -- quotients -------------------------------------------------------------
    def quotient(self, label: Sequence) -> "QuotientRing":
        key = tuple(self.field.elt(x) for x in label)
        key = tuple(int(x) if self.field.p else (int(x.p), int(x.q)) for x in key)
        if key not in self._quotients:
            self._quotients[key] = QuotientRing(self, label)
        return self._quotients[key]


class QuotientRing:
    """``S / (l)`` for a nonzero linear form ``l``; one variable is eliminated."""

    def __init__(self, ring: PolyRing, label: Sequence):
        self.ring = ring
        F = ring.field
        coeffs = [F.elt(x) for x in label]
        nz = [i for i, c in enumerate(coeffs) if c != 0]
        if not nz:
            raise ValueError("cannot divide by the zero form")
        unit = [i for i in nz if c_is_unit(coeffs[i])]
        self.var = (unit or nz)[0]
        self.label = coeffs
        inv = F.one / coeffs[self.var]
        sub = {}
        for i, c in enumerate(coeffs):
            if i != self.var and c != 0:
                e = [0] * ring.nvars
                e[i] = 1
                sub[tuple(e)] = -c * inv
        self.substitution = sub  # x_var = substitution (mod l)
        self._powers = [ring.one()]
        self._reduced_mono: dict = {}
        self._basis: dict[int, list] = {}
        self._basis_index: dict[int, dict] = {}

    def _power(self, n: int) -> Poly:
        while len(self._powers) <= n:
            self._powers.append(self.ring.mul(self._powers[-1], self.substitution))
        return self._powers[n]

    def reduce_monomial(self, m: tuple) -> Poly:
        r = self._reduced_mono.get(m)
        if r is None:
            e = m[self.var]
            if e == 0:
                r = {m: self.ring.field.one}
            else:
                rest = list(m)
                rest[self.var] = 0
                r = self.ring.mono_mul(tuple(rest), self._power(e))
            self._reduced_mono[m] = r
        return r

    def reduce(self, p: Poly) -> Poly:
        out: Poly = {}
        for m, c in p.items():
            if m[self.var] == 0:
                v = out.get(m)
                v = c if v is None else v + c
                if v == 0:
                    out.pop(m, None)
                else:
                    out[m] = v
                continue
            for m2, c2 in self.reduce_monomial(m).items():
                v = out.get(m2)
                v = c * c2 if v is None else v + c * c2
                if v == 0:
                    out.pop(m2, None)
                else:
                    out[m2] = v
        return out

    def basis(self, k: int) -> list:
        if k < 0:
            return []
        if k not in self._basis:
            b = [m for m in self.ring.monomials(k) if m[self.var] == 0]
            self._basis[k] = b
            self._basis_index[k] = {m: i for i, m in enumerate(b)}
        return self._basis[k]

    def basis_index(self, k: int) -> dict:
        self.basis(k)
        return self._basis_index.get(k, {})

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def to_vector(self, p: Poly, k: int) -> list:
        """Coordinates of an already reduced polynomial of degree ``k``."""
        idx = self.basis_index(k)
        v = [self.ring.field.zero] * len(idx)
        for m, c in p.items():
            v[idx[m]] = c
        return v

    def from_vector(self, v: Sequence, k: int) -> Poly:
        return {m: c for m, c in zip(self.basis(k), v) if c != 0}


def c_is_unit(c) -> bool:
    return c == 1 or c == -1
