"""Kazhdan-Lusztig polynomials (regular and parabolic), generic polynomials
obtained by dominant translation, and graded ranks of free modules.

The parabolic polynomials are computed from the canonical basis of the
parabolic Hecke module over minimal coset representatives of ``W / W_J``.
The module on which ``W_J`` acts by the trivial character plus ``v^-1``
(the "spherical" variant) gives the polynomials that agree with regular KL
polynomials at maximal coset representatives; the antispherical variant is
available for comparison.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import NotFound, find_m0
from .weyl import AffineWeylGroup, AffWeylElt, sort_key


# ---------------------------------------------------------------------------
# polynomial types


@dataclass(frozen=True)
class QPoly:
    """Integer polynomial in ``q``; ``coefficients[k]`` multiplies ``q^k``."""

    coefficients: tuple = ()

    def __post_init__(self):
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(int(x) for x in c))

    @classmethod
    def one(cls) -> "QPoly":
        return cls((1,))

    @classmethod
    def zero(cls) -> "QPoly":
        return cls(())

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def coeff(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __add__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return QPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __sub__(self, other: "QPoly") -> "QPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return QPoly(tuple(self.coeff(k) - other.coeff(k) for k in range(n)))

    def scale(self, c: int) -> "QPoly":
        return QPoly(tuple(c * x for x in self.coefficients))

    def shift(self, k: int) -> "QPoly":
        """Multiply by ``q^k`` (``k >= 0``)."""
        if not self.coefficients:
            return self
        return QPoly((0,) * k + self.coefficients)

    def __call__(self, q):
        return sum(c * q**k for k, c in enumerate(self.coefficients))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts)


@dataclass(frozen=True)
class GradedRank:
    """Laurent polynomial in ``q`` with nonnegative coefficients.

    ``terms`` is a sorted tuple of ``(exponent, multiplicity)`` pairs.
    """

    terms: tuple = ()

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "GradedRank":
        counts: dict[int, int] = {}
        for e in exps:
            counts[e] = counts.get(e, 0) + 1
        return cls(tuple(sorted(counts.items())))

    def __add__(self, other: "GradedRank") -> "GradedRank":
        counts = dict(self.terms)
        for e, m in other.terms:
            counts[e] = counts.get(e, 0) + m
        return GradedRank(tuple(sorted((e, m) for e, m in counts.items() if m)))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.terms)

    def as_qpoly(self) -> QPoly:
        if any(e < 0 for e, _ in self.terms):
            raise ValueError("graded rank has negative powers of q")
        top = max((e for e, _ in self.terms), default=-1)
        c = [0] * (top + 1)
        for e, m in self.terms:
            c[e] = m
        return QPoly(tuple(c))

    def coefficient_list(self) -> list:
        """Coefficients from ``q^0`` upward (requires nonnegative powers)."""
        return list(self.as_qpoly().coefficients)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, m in self.terms:
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            parts.append(str(m) if not mono else (mono if m == 1 else f"{m}{mono}"))
        return " + ".join(parts)


def graded_rank(shifts: Iterable[int]) -> GradedRank:
    """Rank polynomial of ``(+)_i S(l_i)`` where each ``l_i`` is an even grading shift.

    A generator in (doubled) degree ``2k``, i.e. shift ``-2k``, contributes ``q^k``.
    """
    exps = []
    for l in shifts:
        if l % 2:
            raise ValueError(f"odd shift {l}: half-integral gradings are not supported")
        exps.append(-l // 2)
    return GradedRank.from_exponents(exps)


# ---------------------------------------------------------------------------
# regular Kazhdan-Lusztig polynomials


class KLTable:
    """Memoized ``P_{x,w}`` on one affine Weyl group.

    Uses the right-handed recursion: for ``w = v s > v``,
    ``P_{x,w} = q^{1-c} P_{xs,v} + q^c P_{x,v} - sum_z mu(z,v) q^{(l(v)-l(z)+1)/2} P_{x,z}``
    with ``c = 1`` if ``xs < x`` and the sum over ``z < v`` with ``zs < z``.
    """

    def __init__(self, W: AffineWeylGroup):
        self.W = W
        self._memo: dict = {}
        self._ideals: dict = {}

    def ideal(self, v: AffWeylElt) -> list:
        if v not in self._ideals:
            self._ideals[v] = sorted(self.W.lower_ideal(v), key=sort_key)
        return self._ideals[v]

    def leq(self, x: AffWeylElt, w: AffWeylElt) -> bool:
        return self.W.bruhat_leq(x, w)

    def mu(self, z: AffWeylElt, v: AffWeylElt) -> int:
        d = v.length - z.length
        if d % 2 == 0:
            return 0
        return self.P(z, v).coeff((d - 1) // 2)

    def P(self, x: AffWeylElt, w: AffWeylElt) -> QPoly:
        key = (x, w)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if x == w:
            out = QPoly.one()
        elif x.length >= w.length or not self.leq(x, w):
            out = QPoly.zero()
        else:
            i = w.right_descents()[0]
            s = self.W.s[i]
            v = w * s
            xs = x * s
            if x.is_right_descent(i):
                out = self.P(xs, w)
            else:
                out = self.P(xs, v).shift(1) + self.P(x, v)
                for z in self.ideal(v):
                    if z == v or not z.is_right_descent(i) or not self.leq(x, z):
                        continue
                    m = self.mu(z, v)
                    if m:
                        out = out - self.P(x, z).shift((v.length - z.length + 1) // 2).scale(m)
        self._memo[key] = out
        return out


_KL_TABLES: dict = {}


def _table(W: AffineWeylGroup) -> KLTable:
    if id(W) not in _KL_TABLES:
        _KL_TABLES[id(W)] = KLTable(W)
    return _KL_TABLES[id(W)]


def kl_regular(W: AffineWeylGroup, x: AffWeylElt, y: AffWeylElt) -> QPoly:
    """The Kazhdan-Lusztig polynomial ``P_{x,y}`` (zero unless ``x <= y``)."""
    return _table(W).P(x, y)


def check_kl_degree(P: QPoly, x: AffWeylElt, y: AffWeylElt) -> bool:
    """Normalization and degree bound: ``P_{x,x} = 1``; ``deg P <= (l(y)-l(x)-1)/2`` and ``P(0) = 1`` for ``x < y``."""
    if x == y:
        return P == QPoly.one()
    if not P:
        return True
    return P.coeff(0) == 1 and 2 * P.degree <= y.length - x.length - 1


# ---------------------------------------------------------------------------
# parabolic polynomials via the parabolic Hecke module


def _laurent_add(p: dict, q: dict, shift: int = 0, scale: int = 1) -> dict:
    out = dict(p)
    for e, c in q.items():
        k = e + shift
        v = out.get(k, 0) + scale * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


class ParabolicKL:
    """Canonical basis of the parabolic module on minimal representatives of ``W / W_J``.

    ``variant`` is ``"spherical"`` (``W_J`` acts through ``v + v^-1`` on the
    self-dual generator) or ``"antispherical"`` (it acts by zero).
    """

    def __init__(self, W: AffineWeylGroup, J: Iterable[int], variant: str = "spherical"):
        if variant not in ("spherical", "antispherical"):
            raise ValueError(f"unknown variant {variant!r}")
        self.W = W
        self.J = tuple(sorted(set(J)))
        self.variant = variant
        self._canon: dict = {}

    def is_rep(self, x: AffWeylElt) -> bool:
        return self.W.is_min_coset_rep(x, self.J)

    def _act(self, i: int, elt: dict) -> dict:
        """Left action of ``H_s + v`` for the simple reflection ``s_i``."""
        s = self.W.s[i]
        out: dict = {}
        for sigma, p in elt.items():
            ss = s * sigma
            if self.is_rep(ss):
                out[ss] = _laurent_add(out.get(ss, {}), p)
                shift = 1 if ss.length > sigma.length else -1
                out[sigma] = _laurent_add(out.get(sigma, {}), p, shift)
            elif self.variant == "spherical":
                acc = _laurent_add(out.get(sigma, {}), p, 1)
                out[sigma] = _laurent_add(acc, p, -1)
        return {k: v for k, v in out.items() if v}

    def canonical(self, B: AffWeylElt) -> dict:
        """``{sigma: m_{sigma,B}(v)}`` with ``m_{B,B} = 1`` and the rest in ``v Z[v]``."""
        if not self.is_rep(B):
            raise ValueError(f"{B} is not a minimal coset representative for J={self.J}")
        hit = self._canon.get(B)
        if hit is not None:
            return hit
        if B.length == 0:
            out = {B: {0: 1}}
        else:
            i = B.left_descents()[0]
            smaller = self.W.s[i] * B
            out = self._act(i, self.canonical(smaller))
            for sigma in sorted(out, key=sort_key, reverse=True):
                if sigma == B or sigma not in out:
                    continue
                p = out[sigma]
                if any(e < 0 for e in p):
                    raise ArithmeticError("negative power of v in the canonical basis recursion")
                c0 = p.get(0, 0)
                if c0:
                    for tau, r in self.canonical(sigma).items():
                        out[tau] = _laurent_add(out.get(tau, {}), r, 0, -c0)
                    out = {k: v for k, v in out.items() if v}
        self._canon[B] = out
        return out

    def P(self, A: AffWeylElt, B: AffWeylElt) -> QPoly:
        m = self.canonical(B).get(A)
        if not m:
            return QPoly.zero()
        d = B.length - A.length
        coeffs = [0] * (d // 2 + 1)
        for e, c in m.items():
            if (d - e) % 2:
                raise ArithmeticError("parity mismatch in parabolic polynomial")
            coeffs[(d - e) // 2] += c
        return QPoly(tuple(coeffs))


_PKL: dict = {}


def _parabolic(W: AffineWeylGroup, J: Iterable[int], variant: str) -> ParabolicKL:
    key = (id(W), tuple(sorted(set(J))), variant)
    if key not in _PKL:
        _PKL[key] = ParabolicKL(W, J, variant)
    return _PKL[key]


def kl_parabolic(W: AffineWeylGroup, J: Iterable[int], A: AffWeylElt, B: AffWeylElt,
                 variant: str = "spherical") -> QPoly:
    """Parabolic KL polynomial for minimal coset representatives ``A, B`` of ``W/W_J``."""
    return _parabolic(W, J, variant).P(A, B)


def longest_element(W: AffineWeylGroup, J: Iterable[int]) -> AffWeylElt:
    return max(W.parabolic_subgroup(J), key=lambda z: z.length)


def kl_parabolic_via_regular(W: AffineWeylGroup, J: Iterable[int], A: AffWeylElt, B: AffWeylElt) -> QPoly:
    """Independent route: ``P_{A w_J, B w_J}`` at maximal coset representatives."""
    wJ = longest_element(W, J)
    return kl_regular(W, A * wJ, B * wJ)


def kl_alcoves(W: AffineWeylGroup, A: AffWeylElt, B: AffWeylElt) -> QPoly:
    """Parabolic polynomial for dominant alcoves ``A = x A+`` and ``B = y A+``.

    Dominant alcoves correspond to minimal representatives of ``x^-1 W_f``.
    """
    return kl_parabolic(W, W.finite_indices, A.inverse(), B.inverse())


def generic_poly(W: AffineWeylGroup, A: AffWeylElt, B: AffWeylElt, m_max: int) -> tuple[QPoly, int]:
    """Stabilized ``P(A + m rho, B + m rho)``.

    Returns the polynomial and the first ``m >= m0`` at which it agrees with
    the value at ``m + 1``; ``m0`` comes from the graph stabilization
    certificate.  Raises :class:`NotFound` when nothing stabilizes by ``m_max``.
    """
    report = find_m0(W, A, B, m_max)
    rho = W.rs.rho
    prev = None
    for m in range(report.m0, m_max + 1):
        mu = tuple(m * r for r in rho)
        P = kl_alcoves(W, W.translate_alcove(A, mu), W.translate_alcove(B, mu))
        if prev is not None and P == prev:
            return P, m - 1
        prev = P
    raise NotFound(f"no two consecutive equal values between m = {report.m0} and {m_max}")


# ---------------------------------------------------------------------------
# tables


def poly_table_rows(pairs: Iterable[tuple], fn) -> list[tuple]:
    rows = []
    for x, y in pairs:
        rows.append((x.word_string(), y.word_string(), list(fn(x, y).coefficients)))
    return rows


def rows_to_csv(rows: Sequence[tuple], header: Sequence[str] = ("x", "y", "coefficients")) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for a, b, coeffs in rows:
        w.writerow([a, b, " ".join(str(c) for c in coeffs)])
    return buf.getvalue()


def rows_to_json(rows: Sequence[tuple], header: Sequence[str] = ("x", "y", "coefficients")) -> str:
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2, sort_keys=True) + "\n"
