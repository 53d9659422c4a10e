from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from momentgraphs.fields import CoefficientField, FieldError, QQ
from momentgraphs.sheaves.ring import PolyRing

from oracles import gauss_rank

F5 = CoefficientField(5)

matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=1, max_size=5)
)


def test_parse():
    assert CoefficientField.parse("Q") == QQ
    assert CoefficientField.parse("F3").p == 3
    assert CoefficientField.parse("F_7").name == "F7"
    for bad in ("F2", "F4", "R", "F"):
        with pytest.raises(FieldError):
            CoefficientField.parse(bad)


def test_elements():
    assert F5.elt(Fraction(1, 2)) * F5.elt(2) == F5.one
    with pytest.raises(FieldError):
        F5.elt(Fraction(1, 5))
    assert QQ.format(Fraction(-3, 6)) == "-1/2"


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_matches_elimination(rows):
    n = len(rows[0])
    assert QQ.rank(rows, n) == gauss_rank(rows)
    assert F5.rank(rows, n) == gauss_rank(rows, 5)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_nullspace(rows):
    n = len(rows[0])
    for F in (QQ, F5):
        ns = F.nullspace(rows, n)
        assert len(ns) == n - F.rank(rows, n)
        for v in ns:
            for r in rows:
                assert sum(F.elt(a) * b for a, b in zip(r, v)) == 0


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solve_in_span(rows, coeffs):
    n = len(rows[0])
    target = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(n)]
    sol = QQ.solve_in_span(rows, target, n)
    assert sol is not None
    for j in range(n):
        assert sum(s * r[j] for s, r in zip(sol, rows)) == target[j]
    picked = QQ.independent_rows(rows, n)
    assert len(picked) == QQ.rank(rows, n)


def test_solve_in_span_none():
    assert QQ.solve_in_span([[1, 0]], [0, 1], 2) is None


def test_poly_ring():
    R = PolyRing(2, QQ, ["a", "c"])
    assert R.dim(3) == 4
    a, c = R.var(0), R.var(1)
    p = R.mul(R.add(a, c), R.sub(a, c))
    assert R.format(p) == R.format(R.sub(R.power(a, 2), R.power(c, 2)))
    Q = R.quotient((1, -1))
    assert Q.dim(2) == 1
    assert Q.reduce(p) == {}
    assert R.from_vector(R.to_vector(p, 2), 2) == p


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_quotient_kills_multiples(l, m):
    R = PolyRing(3, F5)
    if all(x % 5 == 0 for x in l):
        return
    Q = R.quotient(l)
    prod = R.mul(R.linear(l), R.linear(m))
    assert Q.reduce(prod) == {}
