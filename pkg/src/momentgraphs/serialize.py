"""Deterministic JSON and DOT export of moment graphs, JSON import, sheaf dumps
and rank tables.  Rationals are written as ``"p/q"`` strings.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Sequence

from .graphs import GraphEdge, GraphError, GraphVertex, MomentGraph
from .roots import format_coroot
from .weyl import AffineWeylGroup, affine_weyl_group


def rat(x) -> str:
    f = Fraction(x) if not hasattr(x, "q") else Fraction(int(x.p), int(x.q))
    return f"{f.numerator}/{f.denominator}"


def parse_rat(s: str) -> Fraction:
    if not isinstance(s, str) or "/" not in s:
        raise ValueError(f"expected a 'p/q' string, got {s!r}")
    return Fraction(s)


def _encode_payload(payload: dict) -> dict:
    out = {}
    for k in sorted(payload):
        v = payload[k]
        if isinstance(v, (tuple, list)):
            out[k] = [rat(x) for x in v]
        else:
            out[k] = v
    return out


def _decode_payload(payload: dict) -> dict:
    out = {}
    for k, v in payload.items():
        out[k] = tuple(parse_rat(x) for x in v) if isinstance(v, list) else v
    return out


def graph_to_dict(G: MomentGraph) -> dict:
    ranks = {v: i for i, v in enumerate(G.linear_extension())}
    return {
        "root_type": G.W.type,
        "kind": G.kind,
        "lattice_basis": list(G.lattice_basis()),
        "vertices": [
            {
                "id": v.id,
                "word": list(v.element.reduced_word),
                "translation": [rat(x) for x in v.element.t],
                "finite_word": list(v.element.finite_word),
                "order_rank": ranks[v.id],
                "payload": _encode_payload(v.payload),
            }
            for v in G.vertices
        ],
        "order": [list(p) for p in G.covers()],
        "edges": [
            {"from": e.src, "to": e.dst, "label": [rat(x) for x in e.label], "class": e.cls}
            for e in G.edges
        ],
    }


def dumps_graph(G: MomentGraph) -> str:
    return json.dumps(graph_to_dict(G), indent=1, sort_keys=True) + "\n"


def _closure(n: int, covers: Sequence[Sequence[int]]) -> set:
    up = [set() for _ in range(n)]
    for lo, hi in covers:
        up[lo].add(hi)
    order = set()
    for i in range(n):
        stack, seen = list(up[i]), set()
        while stack:
            j = stack.pop()
            if j in seen:
                continue
            seen.add(j)
            stack.extend(up[j])
        order.update((i, j) for j in seen)
    return order


def graph_from_dict(data: dict, W: AffineWeylGroup | None = None) -> MomentGraph:
    W = W or affine_weyl_group(data["root_type"])
    verts = []
    for k, v in enumerate(data["vertices"]):
        if v["id"] != k:
            raise GraphError("vertex ids must be 0..n-1 in order")
        x = W.from_word(v["word"])
        if tuple(rat(t) for t in x.t) != tuple(v["translation"]) or list(x.finite_word) != list(v["finite_word"]):
            raise GraphError(f"vertex {k}: word and translation data disagree")
        verts.append(GraphVertex(k, x, _decode_payload(v.get("payload", {}))))
    edges = [
        GraphEdge(e["from"], e["to"], tuple(parse_rat(x) for x in e["label"]), e.get("class", "unclassified"))
        for e in data["edges"]
    ]
    order = _closure(len(verts), data["order"])
    return MomentGraph(W, verts, edges, order, data.get("kind", "custom"))


def loads_graph(text: str, W: AffineWeylGroup | None = None) -> MomentGraph:
    return graph_from_dict(json.loads(text), W)


_DOT_STYLE = {
    "stable": 'style=solid, color="black"',
    "nonstable": 'style=dashed, color="blue"',
    "other": 'style=bold, color="red"',
    "unclassified": 'style=solid, color="gray40"',
}


def dumps_dot(G: MomentGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for v in G.vertices:
        text = v.element.word_string()
        if "point" in v.payload:
            text += "\\n" + format_coroot(tuple(v.payload["point"]) + (0,))
        lines.append(f'  v{v.id} [label="{text}"];')
    for e in G.edges:
        lines.append(f'  v{e.src} -> v{e.dst} [label="{format_coroot(e.label)}", {_DOT_STYLE[e.cls]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def sheaf_to_dict(F) -> dict:
    """Doubled generator degrees per vertex and edge, annihilating labels and restriction matrices."""
    ring = F.ring
    G = F.graph
    rho = []
    for k, e in enumerate(G.edges):
        for v in (e.src, e.dst):
            M = F.rho.get((v, k), [])
            rho.append({
                "vertex": v,
                "edge": k,
                "matrix": [[ring.format(p) if p else "0" for p in row] for row in M],
            })
    return {
        "field": F.field.name,
        "variables": list(ring.names),
        "meta": {k: _jsonable(v) for k, v in sorted(F.meta.items())},
        "stalks": [{"vertex": v, "degrees": sorted(2 * g for g in F.stalk_gens[v]), "free": F.is_free(v)}
                   for v in range(G.n)],
        "edges": [{"edge": k, "from": e.src, "to": e.dst, "annihilator": [rat(x) for x in e.label],
                   "degrees": sorted(2 * g for g in F.edge_gens[k])} for k, e in enumerate(G.edges)],
        "rho": rho,
    }


def _jsonable(v: Any):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, Fraction):
        return rat(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items(), key=lambda kv: str(kv[0]))}
    return str(v)


def dumps_sheaf(F) -> str:
    return json.dumps(sheaf_to_dict(F), indent=1, sort_keys=True) + "\n"


def rank_table_csv(F, top_label: str | None = None) -> str:
    """Rows ``(w, x, coefficients of the graded rank)`` over the support."""
    G = F.graph
    top = F.meta.get("top")
    w = top_label or (G.element(top).word_string() if top is not None else "")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["w", "x", "rank"])
    for v, r in enumerate(F.graded_ranks()):
        if r.terms:
            writer.writerow([w, G.element(v).word_string(), " ".join(str(c) for c in r.coefficient_list())])
    return buf.getvalue()
