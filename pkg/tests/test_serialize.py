from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from momentgraphs.graphs import (
    GraphError,
    IntervalSpec,
    alcove_of_lattice_point,
    bruhat_graph,
    classify_edges,
    parabolic_graph_alcoves,
    periodic_graph,
    stable_graph,
)
from momentgraphs.serialize import (
    dumps_dot,
    dumps_graph,
    dumps_sheaf,
    graph_to_dict,
    loads_graph,
    parse_rat,
    rank_table_csv,
    rat,
)
from momentgraphs.sheaves.bmp import bmp_construct
from momentgraphs.weyl import affine_weyl_group

W1 = affine_weyl_group("A1")
W2 = affine_weyl_group("A2")


def a1(bottom: int, top: int) -> IntervalSpec:
    return IntervalSpec(alcove_of_lattice_point(W1, (bottom,)), alcove_of_lattice_point(W1, (top,)))


def vertex(i, word, t, fw, coset, point):
    return {"id": i, "word": word, "translation": [t], "finite_word": fw, "order_rank": i,
            "payload": {"coset": coset, "point": [point]}}


# parabolic graph on [0, -a], written out by hand from the label formula
EXPECTED_SMALL = {
    "root_type": "A1",
    "kind": "parabolic",
    "lattice_basis": ["a1_check", "c"],
    "vertices": [
        vertex(0, [], "0/1", [], "e", "0/1"),
        vertex(1, [0], "1/1", [1], "s0", "1/1"),
        vertex(2, [0, 1], "1/1", [], "s1.s0", "-1/1"),
    ],
    "order": [[0, 1], [1, 2]],
    "edges": [
        {"from": 0, "to": 1, "label": ["-1/1", "1/1"], "class": "stable"},
        {"from": 0, "to": 2, "label": ["1/1", "1/1"], "class": "nonstable"},
        {"from": 1, "to": 2, "label": ["1/1", "0/1"], "class": "stable"},
    ],
}


def sample_graphs():
    e2 = W2.identity
    return [
        classify_edges(parabolic_graph_alcoves(W1, a1(0, -2))),
        stable_graph(W1, a1(0, -3)),
        bruhat_graph(W1, (), IntervalSpec(W1.identity, W1.from_word([1, 0, 1]))),
        periodic_graph(W1, IntervalSpec(W1.parse_word("s1.s0.s1"), W1.parse_word("s0.s1"))),
        classify_edges(parabolic_graph_alcoves(W2, IntervalSpec(e2, W2.from_word([0, 1, 2, 1])))),
    ]


def test_small_export_byte_exact():
    G = classify_edges(parabolic_graph_alcoves(W1, a1(0, -1)))
    assert dumps_graph(G) == json.dumps(EXPECTED_SMALL, indent=1, sort_keys=True) + "\n"


@pytest.mark.parametrize("k", range(5))
def test_round_trip(k):
    G = sample_graphs()[k]
    text = dumps_graph(G)
    H = loads_graph(text)
    assert dumps_graph(H) == text
    assert H.n == G.n and [e.label for e in H.edges] == [e.label for e in G.edges]
    assert all(H.leq(a, b) == G.leq(a, b) for a in range(G.n) for b in range(G.n))


def test_export_deterministic():
    a = [dumps_graph(G) for G in sample_graphs()]
    b = [dumps_graph(G) for G in sample_graphs()]
    assert a == b


def test_import_rejects_inconsistent_vertex():
    data = graph_to_dict(parabolic_graph_alcoves(W1, a1(0, -1)))
    data["vertices"][1]["translation"] = ["5/1"]
    with pytest.raises(GraphError):
        loads_graph(json.dumps(data))
    data = graph_to_dict(parabolic_graph_alcoves(W1, a1(0, -1)))
    data["vertices"][1]["id"] = 7
    with pytest.raises(GraphError):
        loads_graph(json.dumps(data))


def test_dot_styles():
    text = dumps_dot(classify_edges(parabolic_graph_alcoves(W1, a1(0, -1))))
    assert text.startswith("digraph G {\n  rankdir=BT;")
    assert 'v0 -> v1 [label="-a+c", style=solid, color="black"];' in text
    assert 'v0 -> v2 [label="a+c", style=dashed, color="blue"];' in text
    assert 'v1 [label="s0\\na"];' in text
    other = dumps_dot(classify_edges(parabolic_graph_alcoves(W2, IntervalSpec(W2.identity, W2.from_word([0, 1, 2, 1])))))
    assert 'style=bold, color="red"' in other


def test_sheaf_dump_and_table():
    G = parabolic_graph_alcoves(W1, a1(0, -2))
    F = bmp_construct(G, G.vertex_of(a1(0, -2).top), d_max=6)
    data = json.loads(dumps_sheaf(F))
    assert [s["degrees"] for s in data["stalks"]] == [[0]] * G.n
    assert data["variables"] == ["a", "c"]
    assert dumps_sheaf(F) == dumps_sheaf(bmp_construct(G, G.vertex_of(a1(0, -2).top), d_max=6))
    rows = rank_table_csv(F).splitlines()
    assert rows[0] == "w,x,rank"
    assert len(rows) == G.n + 1
    assert all(r.endswith(",1") for r in rows[1:])


def test_parse_rat():
    assert parse_rat("3/4") == Fraction(3, 4)
    assert parse_rat("-2/1") == -2
    for bad in ("3", 3, "a/b"):
        with pytest.raises((ValueError, TypeError)):
            parse_rat(bad)


@given(st.fractions(max_denominator=50))
def test_rat_round_trip(x):
    assert parse_rat(rat(x)) == x
