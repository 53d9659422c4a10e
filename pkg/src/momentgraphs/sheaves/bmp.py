"""Braden-MacPherson sheaves by successive projective covers down the order."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..fields import CoefficientField, QQ
from ..graphs import MomentGraph, is_gkm
from .sheaf import (
    Sheaf,
    TruncationRisk,
    is_flabby,
    label_ring,
    matvec,
)
from .ring import PolyRing


def default_dmax(G: MomentGraph, w: int) -> int:
    """``2 * (length of the interval below w) + 4`` in the doubled grading."""
    lengths = [G.element(x).length for x in range(G.n) if G.leq(x, w)]
    return 2 * (max(lengths) - min(lengths)) + 4


def _identity(ring: PolyRing, n: int) -> list:
    one = ring.one()
    return [[one if i == j else {} for j in range(n)] for i in range(n)]


def _mult_rows(F: Sheaf, edges: Sequence[int], vec: Sequence, d: int) -> list:
    """Products ``x_i * vec`` for every variable, ``vec`` in the direct sum of edge slices."""
    out = []
    for i in range(F.ring.nvars):
        var = F.ring.var(i)
        row = []
        pos = 0
        for k in edges:
            n = F.edge_dim(k, d)
            M = F.edge_mult(k, var, d)
            row.extend(matvec(M, vec[pos: pos + n], F.field.zero))
            pos += n
        out.append(row)
    return out


def bmp_construct(
    G: MomentGraph,
    w: int,
    d_max: int | None = None,
    field: CoefficientField = QQ,
    ring: PolyRing | None = None,
    order: Sequence[int] | None = None,
    strict: bool = False,
) -> Sheaf:
    """The canonical sheaf ``B(w)`` on ``G`` computed up to the doubled degree ``d_max``.

    Vertices are processed top-down (``order`` may fix a reverse linear
    extension).  The stalk at ``x`` is the free module on minimal homogeneous
    generators of the image of ``Gamma({>x})`` in the edge modules above
    ``x``.  ``meta["truncation_risk"]`` is set when a generator appears at a
    doubled degree ``>= d_max - 2``; with ``strict`` this raises instead.
    """
    ring = ring or label_ring(G, field)
    field = ring.field
    G.validate(field)
    if d_max is None:
        d_max = default_dmax(G, w)
    D = d_max // 2
    support = [x for x in range(G.n) if G.leq(x, w)]
    supp = set(support)
    if order is None:
        order = sorted(support, key=lambda v: (-len(G.below(v)), -v))
    else:
        order = [v for v in order if v in supp]
        for i, v in enumerate(order):
            if any(u in order[i:] and u != v for u in G.above(v)):
                raise ValueError("processing order is not a reverse linear extension")
    if not order or order[0] != w:
        raise ValueError("processing must start at the top vertex")

    stalk_gens: list[list[int]] = [[] for _ in range(G.n)]
    edge_gens: list[list[int]] = [[] for _ in G.edges]
    rho: dict = {}
    for k, e in enumerate(G.edges):
        rho[(e.src, k)] = []
        rho[(e.dst, k)] = []
    F = Sheaf(G, ring, stalk_gens, edge_gens, rho)
    # the sheaf object shares the lists above, which are filled in as we go
    F.stalk_gens = stalk_gens
    F.edge_gens = edge_gens
    risky = []

    def finish_vertex(y: int):
        n = len(stalk_gens[y])
        for k in G.incident(y):
            e = G.edges[k]
            if e.dst == y and e.src in supp:
                edge_gens[k] = list(stalk_gens[y])
                rho[(y, k)] = _identity(ring, n)
                rho[(e.src, k)] = [[] for _ in range(n)]

    stalk_gens[w] = [0]
    finish_vertex(w)
    for x in order[1:]:
        up = sorted(y for y in G.above(x) if y in supp)
        delta = [k for k in G.up_edges(x) if G.edges[k].dst in supp]
        gens_deg: list[int] = []
        gens_vec: list[list] = []
        prev_image: list = []
        for d in range(D + 1):
            image = []
            for sec in F.sections(up, d):
                vec = []
                for k in delta:
                    y = G.edges[k].dst
                    vec.extend(matvec(F.rho_slice(y, k, d), sec[y], field.zero))
                image.append(vec)
            ncols = sum(F.edge_dim(k, d) for k in delta)
            basis = field.row_basis(image, ncols) if image else []
            products = []
            for v in prev_image:
                products.extend(_mult_rows(F, delta, v, d - 1))
            products = field.row_basis(products, ncols) if products else []
            picks = field.independent_rows(products + basis, ncols)
            for p in picks:
                if p >= len(products):
                    gens_deg.append(d)
                    gens_vec.append(basis[p - len(products)])
                    if 2 * d >= d_max - 2:
                        risky.append((x, 2 * d))
            prev_image = basis
        stalk_gens[x] = gens_deg
        # rho_{x,E}: column i is the E-component of generator i
        for k in delta:
            ne = len(edge_gens[k])
            R = [[{} for _ in gens_deg] for _ in range(ne)]
            rho[(x, k)] = R
        for i, (deg, vec) in enumerate(zip(gens_deg, gens_vec)):
            pos = 0
            for k in delta:
                n = F.edge_dim(k, deg)
                polys = F.edge_to_polys(k, vec[pos: pos + n], deg)
                for j, p in enumerate(polys):
                    rho[(x, k)][j][i] = p
                pos += n
        finish_vertex(x)
    F._rho_cache.clear()
    F.meta.update({
        "kind": "bmp",
        "top": w,
        "d_max": d_max,
        "truncation_risk": bool(risky),
        "risk_witnesses": risky,
        "gkm": bool(is_gkm(G.restrict(support), field)),
        "order": list(order),
    })
    if strict and risky:
        raise TruncationRisk(f"generators near the degree bound at {risky}")
    return F


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class BMPCheck:
    bmp1: bool
    bmp2: bool
    bmp3: bool
    bmp4: bool
    witness: dict

    @property
    def ok(self) -> bool:
        return self.bmp1 and self.bmp2 and self.bmp3 and self.bmp4


def check_bmp(F: Sheaf, w: int, d_max: int | None = None) -> BMPCheck:
    G = F.graph
    field = F.field
    d_max = d_max if d_max is not None else F.meta.get("d_max", default_dmax(G, w))
    D = d_max // 2
    support = [x for x in range(G.n) if G.leq(x, w)]
    supp = set(support)
    witness: dict = {}

    bmp1 = all(F.is_free(v) for v in range(G.n)) and sorted(F.stalk_gens[w]) == [0]
    bmp1 = bmp1 and all(not F.stalk_gens[v] for v in range(G.n) if v not in supp)
    if not bmp1:
        witness["bmp1"] = "stalk shape"

    bmp2 = True
    for k, e in enumerate(G.edges):
        if e.dst not in supp or e.src not in supp:
            if F.edge_gens[k]:
                bmp2 = False
                witness["bmp2"] = (k, "nonzero edge module outside the support")
            continue
        y = e.dst
        lab = F.ring.linear(e.label)
        for d in range(D + 1):
            M = F.rho_slice(y, k, d)
            if field.rank(M, F.ambient_dim(y, d)) != F.edge_dim(k, d):
                bmp2 = False
                witness["bmp2"] = (k, d, "not surjective")
                break
            kernel = F.ambient_dim(y, d) - F.edge_dim(k, d)
            lower = F.ambient_dim(y, d - 1)
            if kernel != lower:
                bmp2 = False
                witness["bmp2"] = (k, d, "kernel dimension")
                break
            for b in range(lower):
                unit = [field.zero] * lower
                unit[b] = field.one
                polys = F.ambient_to_polys(y, unit, d - 1)
                prod = [F.ring.mul(lab, p) for p in polys]
                vec = F.polys_to_ambient(y, prod, d)
                if any(x != 0 for x in matvec(M, vec, field.zero)):
                    bmp2 = False
                    witness["bmp2"] = (k, d, "label multiple not in kernel")
                    break
            if not bmp2:
                break
        if not bmp2:
            break

    rep = is_flabby(F, D, support=support)
    bmp3 = rep.ok
    if not bmp3:
        witness["bmp3"] = rep.witness

    bmp4 = True
    for d in range(D + 1):
        glob = F.sections(support, d)
        for x in support:
            rows = [sec[x] for sec in glob]
            if field.rank(rows, F.ambient_dim(x, d)) != F.ambient_dim(x, d):
                bmp4 = False
                witness["bmp4"] = (x, d)
                break
        if not bmp4:
            break
    return BMPCheck(bmp1, bmp2, bmp3, bmp4, witness)


def rank_table(F: Sheaf) -> list:
    """``(vertex, [coefficients of the graded rank])`` for each vertex in the support."""
    out = []
    for v, r in enumerate(F.graded_ranks()):
        if r.terms:
            out.append((v, r.coefficient_list()))
    return out
