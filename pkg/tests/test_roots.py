from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from momentgraphs.roots import AffineRoot, build_root_system, format_coroot

A1 = build_root_system("A1")
A2 = build_root_system("A2")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_a1_data():
    assert A1.positive_roots == ((1,),)
    assert A1.form((1,), (1,)) == 2
    assert A1.affine_simple_roots == (AffineRoot((-1,), 1), AffineRoot((1,), 0))


def test_a2_data():
    assert set(A2.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert A2.highest_root == (1, 1)
    assert A2.pairing((1, 0), (0, 1)) == -1
    assert A2.pairing((1, 0), (1, 0)) == 2


def test_affine_coroots():
    assert A1.affine_coroot(AffineRoot((1,), 2)).as_tuple() == (1, 2)
    assert A1.affine_coroot(AffineRoot((1,), 0)).as_tuple() == (1, 0)
    # direct substitution: coroot of -alpha + delta is -alpha_check + (2 / (alpha, alpha)) c
    assert A1.affine_coroot(AffineRoot((-1,), 1)).as_tuple() == (-1, 1)
    assert format_coroot((-1, 1)) == "-a+c"
    assert format_coroot((1, -1, 2)) == "a-b+2c"


def test_reflections():
    assert A1.reflect(AffineRoot((1,), 0), (1,)) == (-1,)
    assert A1.reflect(AffineRoot((1,), 1), (0,)) == (-1,)


@given(st.lists(rationals, min_size=2, max_size=2), st.sampled_from([(1, 0), (0, 1), (1, 1)]), st.integers(-3, 3))
def test_affine_reflection_is_involution(lam, alpha, n):
    r = AffineRoot(alpha, n)
    lam = tuple(lam)
    assert A2.reflect(r, A2.reflect(r, lam)) == lam


@given(st.lists(rationals, min_size=1, max_size=1), st.integers(-3, 3))
def test_a1_reflection_involution(lam, n):
    r = AffineRoot((1,), n)
    assert A1.reflect(r, A1.reflect(r, tuple(lam))) == tuple(lam)


def test_rho_pairs_to_one_with_simple_coroots():
    for rs in (A1, A2):
        # half-sum of positive coroots, built here from the positive roots
        total = [Fraction(0)] * rs.rank
        for beta in rs.positive_roots:
            total = [t + c for t, c in zip(total, rs.coroot_coords(beta))]
        rho = tuple(t / 2 for t in total)
        assert rho == rs.rho
        for i in range(rs.rank):
            simple = tuple(int(i == j) for j in range(rs.rank))
            assert rs.pairing(simple, rho) == 1
