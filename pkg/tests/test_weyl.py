from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from momentgraphs.roots import AffineRoot
from momentgraphs.weyl import affine_weyl_group, sort_key

from oracles import hyperplane_length, subword_ideal

W1 = affine_weyl_group("A1")
W2 = affine_weyl_group("A2")


def words(W, max_len=7):
    return st.lists(st.integers(0, W.rank), max_size=max_len).map(W.from_word)


def test_composition_examples():
    s0, s1 = W1.s
    assert s1 * s1 == W1.identity
    assert W1.reflection(AffineRoot((1,), 1)) * s1 == W1.translation((-1,))
    assert W2.translation((1, 0)) * W2.translation((0, 1)) == W2.translation((1, 1))


def test_lengths():
    s0, s1 = W1.s
    assert W1.identity.length == 0
    assert s0.length == 1
    assert W1.translation((1,)).length == 2 == hyperplane_length(W1, W1.translation((1,)), bound=2)


@pytest.mark.parametrize("W, radius", [(W1, 8), (W2, 5)])
def test_length_matches_hyperplane_count(W, radius):
    for x in W.ball(radius):
        assert x.length == hyperplane_length(W, x)


@pytest.mark.parametrize("W, radius", [(W1, 6), (W2, 4)])
def test_bruhat_matches_subwords(W, radius):
    ball = W.ball(radius)
    for y in ball:
        below = subword_ideal(W, y)
        assert W.lower_ideal(y) == below
        for x in ball:
            assert W.bruhat_leq(x, y) == (x in below)


def test_bruhat_examples():
    s0, s1 = W1.s
    assert W1.bruhat_leq(W1.identity, s0)
    assert not W1.bruhat_leq(s0, s1) and not W1.bruhat_leq(s1, s0)
    assert W1.bruhat_leq(W1.parse_word("s1.s0"), W1.parse_word("s1.s0.s1"))


def test_generic_order_examples():
    g = W1.generic_order(6)
    s0, s1 = W1.s
    assert g.leq(W1.identity, s0)
    assert g.leq(s1, W1.identity)
    assert g.leq(s0, s0)


@settings(max_examples=60, deadline=None)
@given(words(W2), words(W2))
def test_group_axioms(x, y):
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert x * x.inverse() == W2.identity
    assert W2.from_word(x.reduced_word) == x
    assert len(x.reduced_word) == x.length


@settings(max_examples=60, deadline=None)
@given(words(W2), st.integers(0, 2))
def test_length_changes_by_one(x, i):
    assert abs((x * W2.s[i]).length - x.length) == 1
    assert (x * W2.s[i]).length < x.length or not x.is_right_descent(i)


def test_translate_alcove():
    assert W1.translate_alcove(W1.identity, (1,)) == W1.translation((1,))
    omega = W2.rs.fundamental_coweights
    for x in W2.ball(4):
        for mu in omega:
            back = tuple(-m for m in mu)
            assert W2.translate_alcove(W2.translate_alcove(x, mu), back) == x


def test_dominant_translation_stays_dominant():
    rs = W2.rs
    dom = [x for x in W2.ball(5) if x.is_dominant()]
    assert dom
    for x in dom:
        for mu in (rs.rho, rs.fundamental_coweights[0], rs.fundamental_coweights[1]):
            y = W2.translate_alcove(x, mu)
            c = y.centroid
            assert all(rs.pairing(a, c) > 0 for a in rs.simple_roots)


def test_sigma_mu():
    assert W1.sigma_mu((1,)) == (0, 1)
    assert W1.sigma_mu(W1.rs.fundamental_coweights[0]) == (1, 0)
    assert W2.sigma_mu(W2.rs.rho) == (0, 1, 2)
    om1, om2 = W2.rs.fundamental_coweights
    # the class of omega1 + omega2 is trivial, and omega1 generates a cyclic group of order 3
    s1, s2 = W2.sigma_mu(om1), W2.sigma_mu(om2)
    assert tuple(s1[s2[i]] for i in range(3)) == (0, 1, 2)
    assert s1 != (0, 1, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_sigma_is_a_homomorphism(a, b, c, d):
    om1, om2 = W2.rs.fundamental_coweights
    mu = tuple(a * x + b * y for x, y in zip(om1, om2))
    nu = tuple(c * x + d * y for x, y in zip(om1, om2))
    total = tuple(m + n for m, n in zip(mu, nu))
    smu, snu = W2.sigma_mu(mu), W2.sigma_mu(nu)
    assert W2.sigma_mu(total) == tuple(smu[snu[i]] for i in range(3))


def test_min_coset_rep():
    s0, s1 = W1.s
    assert W1.min_coset_rep(W1.identity, [1]) == W1.identity
    assert W1.min_coset_rep(s1, [1]) == W1.identity
    x = W1.parse_word("s0.s1")
    coset = [x, x * s1]
    assert W1.min_coset_rep(x, [1]) == min(coset, key=lambda z: z.length) == s0


def test_ball_growth():
    # Poincare series of the affine A2 group: 1, 3, 6, 9, 12, ...
    sizes = [len([x for x in W2.ball(5) if x.length == k]) for k in range(6)]
    assert sizes == [1, 3, 6, 9, 12, 15]
    assert [len([x for x in W1.ball(5) if x.length == k]) for k in range(6)] == [1, 2, 2, 2, 2, 2]


def test_parse_word_errors():
    with pytest.raises(ValueError):
        W1.parse_word("s2")
    with pytest.raises(ValueError):
        W1.parse_word("t1")
    assert W1.parse_word("e") == W1.identity
    assert sorted(W1.ball(2), key=sort_key)[0] == W1.identity
