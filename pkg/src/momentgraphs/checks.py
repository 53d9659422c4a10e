"""Exhaustive checks of order properties on finite balls, for the Bruhat order
and the generic order on alcoves.

Elements ``w`` stand for alcoves ``w A+``.  Right multiplication by a simple
reflection crosses a wall of the alcove; in the generic order the relation is
computed inside a ball a few steps larger than the region being checked, so
that chains leaving the region are still seen.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable

from .roots import vscale
from .weyl import AffineWeylGroup, AffWeylElt, sort_key


@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int = 0
    witness: object = None
    data: dict = dc_field(default_factory=dict)

    def line(self) -> str:
        status = "pass" if self.ok else f"FAIL witness={self.witness}"
        return f"{self.name}: {status} ({self.checked} cases)"


class OrderOracle:
    """``leq`` for one of the two orders, restricted to elements of length ``<= radius``."""

    def __init__(self, W: AffineWeylGroup, kind: str, radius: int, pad: int = 4):
        if kind not in ("bruhat", "generic"):
            raise ValueError("order kind must be 'bruhat' or 'generic'")
        self.W, self.kind, self.radius = W, kind, radius
        self.elements = sorted(W.ball(radius), key=sort_key)
        self.members = set(self.elements)
        self._generic = W.generic_order(radius + pad) if kind == "generic" else None
        self._cache: dict = {}

    def leq(self, x: AffWeylElt, y: AffWeylElt) -> bool:
        key = (x, y)
        hit = self._cache.get(key)
        if hit is None:
            if self.kind == "bruhat":
                hit = self.W.bruhat_leq(x, y)
            else:
                hit = self._generic.leq(x, y)
            self._cache[key] = hit
        return hit

    def lt(self, x: AffWeylElt, y: AffWeylElt) -> bool:
        return x != y and self.leq(x, y)

    def interval(self, x: AffWeylElt, y: AffWeylElt) -> list[AffWeylElt]:
        if self.kind == "bruhat":
            return self.W.bruhat_interval(x, y) if self.leq(x, y) else []
        return self._generic.interval(x, y) if self.leq(x, y) else []

    def is_cover(self, x: AffWeylElt, y: AffWeylElt) -> bool:
        return self.lt(x, y) and len(self.interval(x, y)) == 2

    def contains(self, x: AffWeylElt) -> bool:
        if self.kind == "bruhat":
            return True
        return self._generic.contains(x)


def _reflections_in_ball(W: AffineWeylGroup, radius: int) -> list[AffWeylElt]:
    return W.reflections_up_to(radius + 1)


def check_po1(O: OrderOracle) -> CheckResult:
    """``w`` and ``t w`` are comparable for reflections with ``t w`` in the ball."""
    refl = _reflections_in_ball(O.W, O.radius)
    n = 0
    for w in O.elements:
        for t in refl:
            y = t * w
            if y not in O.members:
                continue
            n += 1
            if not (O.leq(w, y) or O.leq(y, w)):
                return CheckResult(f"PO1[{O.kind}]", False, n, (w, y))
    return CheckResult(f"PO1[{O.kind}]", True, n)


def check_po2(O: OrderOracle) -> CheckResult:
    """``[w, ws] = {w, ws}`` whenever ``w < ws``."""
    n = 0
    for w in O.elements:
        for s in O.W.s:
            y = w * s
            if y not in O.members or not O.lt(w, y):
                continue
            n += 1
            if len(O.interval(w, y)) != 2:
                return CheckResult(f"PO2[{O.kind}]", False, n, (w, y))
    return CheckResult(f"PO2[{O.kind}]", True, n)


def check_po3(O: OrderOracle) -> CheckResult:
    """Both lifting properties, on all triples ``(x, y, s)`` inside the ball."""
    n = 0
    for x in O.elements:
        for s in O.W.s:
            xs = x * s
            if xs not in O.members:
                continue
            for y in O.elements:
                ys = y * s
                if not O.contains(ys):
                    continue
                if O.lt(x, xs) and O.leq(y, xs):
                    n += 1
                    if not O.leq(ys, xs):
                        return CheckResult(f"PO3[{O.kind}]", False, n, ("i", x, y, s))
                if O.lt(xs, x) and O.leq(xs, y):
                    n += 1
                    if not O.leq(xs, ys):
                        return CheckResult(f"PO3[{O.kind}]", False, n, ("ii", x, y, s))
    return CheckResult(f"PO3[{O.kind}]", True, n)


def check_directed(W: AffineWeylGroup, kind: str, radius: int = 4, bound_radius: int = 8) -> CheckResult:
    """Every pair in the ``radius`` ball has a common upper bound in the ``bound_radius`` ball."""
    O = OrderOracle(W, kind, bound_radius)
    small = sorted(W.ball(radius), key=sort_key)
    n = 0
    for a, b in combinations(small, 2):
        n += 1
        if not any(O.leq(a, z) and O.leq(b, z) for z in O.elements):
            return CheckResult(f"directed[{kind}]", False, n, (a, b))
    return CheckResult(f"directed[{kind}]", True, n)


def check_diamond(O: OrderOracle) -> CheckResult:
    """If ``w`` is covered by ``ws`` and ``wt`` (``s`` simple, ``t`` a reflection, ``s != t``)
    then both are covered by ``wts``."""
    refl = _reflections_in_ball(O.W, O.radius)
    n = 0
    for w in O.elements:
        for s in O.W.s:
            ws = w * s
            if ws not in O.members or not O.is_cover(w, ws):
                continue
            for t in refl:
                if t == s:
                    continue
                wt = w * t
                wts = wt * s
                if wt not in O.members or not O.contains(wts) or not O.is_cover(w, wt):
                    continue
                n += 1
                if not (O.is_cover(ws, wts) and O.is_cover(wt, wts)):
                    return CheckResult(f"diamond[{O.kind}]", False, n, (w, s, t))
    return CheckResult(f"diamond[{O.kind}]", True, n)


def gen_bruhat_witnesses(W: AffineWeylGroup, pairs: Iterable[tuple], n_max: int = 8, radius: int | None = None) -> CheckResult:
    """Least ``n`` such that for every ``m`` in ``[n, n_max]``
    ``A <=_generic B`` iff ``A + m rho <= B + m rho`` in the Bruhat order."""
    pairs = list(pairs)
    radius = radius or max(max(a.length, b.length) for a, b in pairs) + 2
    gen = W.generic_order(radius + 4)
    rho = W.rs.rho
    witnesses = {}
    worst = 0
    for A, B in pairs:
        want = gen.leq(A, B)
        agree = []
        for m in range(n_max + 1):
            mu = vscale(m, rho)
            agree.append(W.bruhat_leq(W.translate_alcove(A, mu), W.translate_alcove(B, mu)) == want)
        found = None
        for n in range(n_max + 1):
            if all(agree[n:]):
                found = n
                break
        if found is None:
            return CheckResult("gen_bruhat", False, len(witnesses), (A, B), {"witnesses": witnesses})
        witnesses[(A, B)] = found
        worst = max(worst, found)
    return CheckResult("gen_bruhat", True, len(witnesses), None, {"witnesses": witnesses, "max_n": worst})


def order_suite(W: AffineWeylGroup, radius: int = 6, small_radius: int = 4, n_max: int = 8) -> list[CheckResult]:
    out = []
    for kind in ("bruhat", "generic"):
        O = OrderOracle(W, kind, radius)
        out.extend([check_po1(O), check_po2(O), check_po3(O)])
        out.append(check_diamond(OrderOracle(W, kind, small_radius)))
        out.append(check_directed(W, kind, small_radius, 2 * small_radius))
    ball = sorted(W.ball(small_radius - 1), key=sort_key)
    out.append(gen_bruhat_witnesses(W, [(a, b) for a in ball for b in ball if a != b], n_max))
    return out
