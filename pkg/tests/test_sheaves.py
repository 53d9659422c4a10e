from __future__ import annotations

import pytest

from momentgraphs.fields import CoefficientField
from momentgraphs.graphs import (
    IntervalSpec,
    alcove_of_lattice_point,
    bruhat_graph,
    identity_morphism,
    map_to_point,
    parabolic_graph_alcoves,
    point_graph,
    stable_graph,
    stable_translation_iso,
    translate_interval,
)
from momentgraphs.sheaves import (
    TruncationRisk,
    bmp_construct,
    check_bmp,
    is_flabby,
    is_flabby_local,
    pullback,
    pushforward,
    rank_table,
    structure_sheaf,
)
from momentgraphs.sheaves.functors import stab_functor
from momentgraphs.sheaves.sheaf import hom_dims, label_ring, upper_sets
from momentgraphs.weyl import affine_weyl_group

from oracles import binomial, hecke_kl

W1 = affine_weyl_group("A1")
W2 = affine_weyl_group("A2")


def a1_interval(bottom, top):
    return IntervalSpec(alcove_of_lattice_point(W1, (bottom,)), alcove_of_lattice_point(W1, (top,)))


def chain_graph():
    return bruhat_graph(W1, (), IntervalSpec(W1.identity, W1.s[1]))


def test_structure_sheaf_one_vertex():
    Z = structure_sheaf(point_graph(W1))
    assert [len(Z.sections([0], d)) for d in range(5)] == [d + 1 for d in range(5)]


def test_structure_sheaf_one_edge():
    G = chain_graph()
    Z = structure_sheaf(G)
    # pairs (z_x, z_y) of forms of degree d with z_x - z_y divisible by the label
    assert [len(Z.sections(range(2), d)) for d in range(4)] == [(d + 1) + d for d in range(4)]
    assert len(Z.sections(range(2), 1)) == 3


def test_constant_sections_stable_a1():
    G = stable_graph(W1, a1_interval(0, -3))
    Z = structure_sheaf(G)
    ring = Z.ring
    for var in (0, 1):
        sec = {v: Z.polys_to_ambient(v, [ring.var(var)], 1) for v in range(G.n)}
        assert Z.is_section(sec, 1)


def test_sections_edge_cases():
    G = stable_graph(W1, a1_interval(0, -2))
    Z = structure_sheaf(G)
    assert Z.sections([], 2) == []
    assert len(Z.sections([0], 2)) == 3


def test_parabolic_section_dimensions():
    G = parabolic_graph_alcoves(W1, a1_interval(0, -3))
    Z = structure_sheaf(G)
    chain = G.linear_extension()
    for j in range(G.n):
        for i in range(j + 1, G.n):
            for r in range(i - j):
                assert len(Z.sections(chain[j:i + 1], r)) == binomial(r + 2, 2)


def test_flabbiness():
    Z = structure_sheaf(stable_graph(W1, a1_interval(0, -3)))
    assert is_flabby(Z, 5) and is_flabby_local(Z, 5)
    assert is_flabby(structure_sheaf(point_graph(W1)), 3)
    G = parabolic_graph_alcoves(W1, a1_interval(0, -2))
    F = bmp_construct(G, G.vertex_of(alcove_of_lattice_point(W1, (-2,))), d_max=12)
    assert is_flabby(F, 5)


def test_structure_sheaf_not_flabby_on_a2_regular():
    """A nontrivial polynomial forces the canonical sheaf away from the structure sheaf."""
    w = W2.parse_word("s2.s1.s0.s2")
    G = bruhat_graph(W2, (), IntervalSpec(W2.identity, w))
    Z = structure_sheaf(G)
    assert not is_flabby_local(Z, 2)


def test_upper_sets_count():
    G = parabolic_graph_alcoves(W1, a1_interval(0, -2))
    assert len(upper_sets(G)) == G.n + 1


def test_bmp_chain():
    G = chain_graph()
    F = bmp_construct(G, G.vertex_of(W1.s[1]), d_max=6)
    assert F.stalk_gens[G.vertex_of(W1.identity)] == [0]
    assert rank_table(F) == [(0, [1]), (1, [1])]


def test_bmp_a1_parabolic_rank_one():
    for top in (-2, 3, -3):
        G = parabolic_graph_alcoves(W1, a1_interval(0, top))
        w = G.vertex_of(alcove_of_lattice_point(W1, (top,)))
        F = bmp_construct(G, w, d_max=14, strict=True)
        assert all(F.stalk_gens[v] == [0] for v in range(G.n))
        assert check_bmp(F, w).ok


def test_bmp_support_and_top():
    G = parabolic_graph_alcoves(W1, a1_interval(0, -2))
    w = G.vertex_of(alcove_of_lattice_point(W1, (1,)))
    F = bmp_construct(G, w, d_max=10)
    assert F.stalk_gens[w] == [0]
    for v in range(G.n):
        if not G.leq(v, w):
            assert F.stalk_gens[v] == []


def test_bmp_regular_a2_matches_hecke():
    w = W2.parse_word("s2.s1.s0.s2")
    G = bruhat_graph(W2, (), IntervalSpec(W2.identity, w))
    F = bmp_construct(G, G.vertex_of(w))
    oracle = hecke_kl(W2, 4)
    for v, r in enumerate(F.graded_ranks()):
        assert r.coefficient_list() == oracle[(G.element(v), w)]
    assert str(F.graded_ranks()[G.vertex_of(W2.identity)]) == "1 + q"


def test_truncation_risk():
    G = parabolic_graph_alcoves(W1, a1_interval(0, -2))
    w = G.vertex_of(alcove_of_lattice_point(W1, (-2,)))
    with pytest.raises(TruncationRisk):
        bmp_construct(G, w, d_max=2, strict=True)
    F = bmp_construct(G, w, d_max=2)
    assert F.meta["truncation_risk"]


def test_bmp_over_finite_field():
    G = parabolic_graph_alcoves(W1, a1_interval(0, -2))
    w = G.vertex_of(alcove_of_lattice_point(W1, (-2,)))
    F = bmp_construct(G, w, d_max=12, field=CoefficientField(5), strict=True)
    assert all(F.stalk_gens[v] == [0] for v in range(G.n))


def test_pullback_identity_and_point():
    G = stable_graph(W1, a1_interval(0, -2))
    Z = structure_sheaf(G)
    same = pullback(identity_morphism(G), Z)
    assert same.stalk_gens == Z.stalk_gens and same.edge_gens == Z.edge_gens
    S = structure_sheaf(point_graph(W1), ring=Z.ring)
    P = pullback(map_to_point(G), S)
    assert [len(P.sections(range(G.n), d)) for d in range(4)] == [len(Z.sections(range(G.n), d)) for d in range(4)]
    assert hom_dims(P, Z, 3) == hom_dims(Z, Z, 3)


def test_pullback_of_bmp_along_translation():
    I = a1_interval(0, -2)
    tau = stable_translation_iso(W1, I, (1,))
    H = tau.target
    top = H.vertex_of(translate_interval(W1, I, (1,)).top)
    B = bmp_construct(H, top, d_max=12)
    P = pullback(tau, B)
    top_src = tau.source.vertex_of(I.top)
    assert check_bmp(P, top_src, 12).ok
    assert [r.coefficient_list() for r in P.graded_ranks()] == [[1]] * tau.source.n


def test_pushforward():
    G = stable_graph(W1, a1_interval(0, -2))
    Z = structure_sheaf(G)
    P = pushforward(map_to_point(G), Z)
    assert [P.stalk_dim(0, d) for d in range(4)] == [len(Z.sections(range(G.n), d)) for d in range(4)]
    same = pushforward(identity_morphism(G), Z)
    assert [[same.stalk_dim(v, d) for d in range(3)] for v in range(G.n)] == [[Z.stalk_dim(v, d) for d in range(3)] for v in range(G.n)]


def test_stab_of_structure_sheaf():
    I = a1_interval(0, -3)
    P, S = parabolic_graph_alcoves(W1, I), stable_graph(W1, I)
    ring = label_ring(P)
    Z = structure_sheaf(P, ring)
    Zs = stab_functor(Z, S)
    direct = structure_sheaf(S, ring)
    for d in range(4):
        assert len(Zs.sections(range(S.n), d)) == len(direct.sections(range(S.n), d))


def test_stab_of_bmp_a1():
    I = a1_interval(0, -3)
    P, S = parabolic_graph_alcoves(W1, I), stable_graph(W1, I)
    B = bmp_construct(P, P.vertex_of(I.top), d_max=14)
    T = stab_functor(B, S)
    assert [r.coefficient_list() for r in T.graded_ranks()] == [[1]] * S.n
    assert is_flabby(T, 5)
