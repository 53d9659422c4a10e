"""Pullback and pushforward along moment graph morphisms, the functors relating
regular, periodic, parabolic and stable graphs, and the adjunction check.

Twisted module structures are converted into untwisted coordinates: a stalk
``H^{f(x)}`` whose action is twisted by the lattice automorphism ``phi`` is
rewritten by applying ``phi^-1`` to every coefficient.  The automorphism
itself is kept in ``Sheaf.twists`` as a tag.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from ..graphs import (
    GraphError,
    IntervalSpec,
    MGMorphism,
    MomentGraph,
    inclusion_g,
    map_by_elements,
    opp_iso,
    periodic_graph_on,
    regular_graph_on,
    stable_graph,
    parabolic_graph_alcoves,
)
from ..roots import mat_identity, mat_inverse, mat_mul
from ..weyl import AffineWeylGroup
from .sheaf import Sheaf, hom_dims


def _is_identity(M) -> bool:
    return M is None or [list(r) for r in M] == [list(r) for r in mat_identity(len(M))]


def _twist_poly(ring, p, M):
    return p if _is_identity(M) else ring.apply_linear_map(p, M)


def _congruent_identity(M, label, field) -> bool:
    """``M v - v`` lies in the line of ``label`` for every lattice vector ``v``."""
    from ..graphs import _is_multiple

    n = len(M)
    for j in range(n):
        col = [M[i][j] - (1 if i == j else 0) for i in range(n)]
        if not field.is_zero_vector(col) and not _is_multiple(col, label, field):
            return False
    return True


# ---------------------------------------------------------------------------
# pullback


def pullback(f: MGMorphism, H: Sheaf) -> Sheaf:
    f.validate()
    G, Gt = f.source, f.target
    if H.graph is not Gt and H.graph.n != Gt.n:
        raise GraphError("sheaf does not live on the target graph")
    ring = H.ring
    for u in range(Gt.n):
        if not H.is_free(u):
            raise ValueError("pullback needs free stalks")
    inv = [mat_inverse(f.twist(x)) for x in range(G.n)]
    stalk_gens = [list(H.stalk_gens[f.vertex_map[x]]) for x in range(G.n)]
    edge_gens = []
    rho = {}
    for k, e in enumerate(G.edges):
        a, b = f.vertex_map[e.src], f.vertex_map[e.dst]
        Q = ring.quotient(e.label)
        if a == b:
            if not _congruent_identity(mat_mul(inv[e.src], f.twist(e.dst)), e.label, ring.field):
                raise GraphError(f"twists at the ends of collapsed edge {k} disagree modulo its label")
            n = len(H.stalk_gens[a])
            edge_gens.append(list(H.stalk_gens[a]))
            one = ring.one()
            ident = [[one if i == j else {} for j in range(n)] for i in range(n)]
            rho[(e.src, k)] = ident
            rho[(e.dst, k)] = [list(r) for r in ident]
            continue
        kk = Gt.edge_between(a, b)
        edge_gens.append(list(H.edge_gens[kk]))
        for x, u in ((e.src, a), (e.dst, b)):
            R = H.rho[(u, kk)]
            rho[(x, k)] = [[Q.reduce(_twist_poly(ring, p, inv[x])) for p in row] for row in R]
    twists = [f.twist(x) for x in range(G.n)]
    meta = {"kind": "pullback", "of": H.meta.get("kind")}
    return Sheaf(G, ring, stalk_gens, edge_gens, rho, twists=twists, meta=meta)


# ---------------------------------------------------------------------------
# pushforward


def pushforward(f: MGMorphism, F: Sheaf) -> Sheaf:
    """Stalks are section spaces over fibers, edge modules direct sums over preimage edges.

    Every fiber with more than one vertex must carry a single twist.
    """
    f.validate()
    G, Gt = f.source, f.target
    ring = F.ring
    for x in range(G.n):
        if not F.is_free(x):
            raise ValueError("pushforward needs free stalks")
    fibers = [[x for x in range(G.n) if f.vertex_map[x] == u] for u in range(Gt.n)]
    fiber_twist = []
    for u, fib in enumerate(fibers):
        tws = {tuple(tuple(r) for r in f.twist(x)) for x in fib}
        if len(tws) > 1:
            raise ValueError(f"fiber over vertex {u} carries different twists")
        fiber_twist.append(f.twist(fib[0]) if fib else None)

    stalk_gens = []
    offsets = []
    for u, fib in enumerate(fibers):
        gens, offs = [], {}
        for x in fib:
            offs[x] = len(gens)
            gens.extend(F.stalk_gens[x])
        stalk_gens.append(gens)
        offsets.append(offs)

    preimages = [[] for _ in Gt.edges]
    for k in range(len(G.edges)):
        kk = f.edge_image(k)
        if kk is not None:
            preimages[kk].append(k)

    edge_gens = []
    edge_offsets = []
    for kk in range(len(Gt.edges)):
        gens, offs = [], {}
        for k in preimages[kk]:
            offs[k] = len(gens)
            gens.extend(F.edge_gens[k])
        edge_gens.append(gens)
        edge_offsets.append(offs)

    rho = {}
    for kk, et in enumerate(Gt.edges):
        Q = ring.quotient(et.label)
        for u in (et.src, et.dst):
            R = [[{} for _ in stalk_gens[u]] for _ in edge_gens[kk]]
            for k in preimages[kk]:
                e = G.edges[k]
                x = e.src if f.vertex_map[e.src] == u else e.dst
                Rx = F.rho[(x, k)]
                M = f.twist(x)
                ro, co = edge_offsets[kk][k], offsets[u][x]
                for j, row in enumerate(Rx):
                    for i, p in enumerate(row):
                        if p:
                            R[ro + j][co + i] = Q.reduce(_twist_poly(ring, p, M))
            rho[(u, kk)] = R

    def make_space(u):
        fib = fibers[u]
        M = fiber_twist[u]

        def space(d):
            basis = []
            for sec in F.sections(fib, d):
                polys = []
                for x in fib:
                    polys.extend(F.ambient_to_polys(x, sec[x], d))
                polys = [_twist_poly(ring, p, M) for p in polys]
                basis.append(_polys_to_vector(ring, stalk_gens[u], polys, d))
            return basis

        return space

    # a fiber with at most one vertex has the full free module as sections
    spaces = {u: make_space(u) for u in range(Gt.n) if len(fibers[u]) > 1}
    twists = [fiber_twist[u] for u in range(Gt.n)]
    meta = {"kind": "pushforward", "of": F.meta.get("kind")}
    return Sheaf(Gt, ring, stalk_gens, edge_gens, rho, twists=twists, stalk_spaces=spaces, meta=meta)


def _polys_to_vector(ring, gens, polys, d):
    field = ring.field
    vec = []
    for g, p in zip(gens, polys):
        idx = ring.mono_index(d - g)
        part = [field.zero] * len(idx)
        for m, c in p.items():
            part[idx[m]] = c
        vec.extend(part)
    return vec


# ---------------------------------------------------------------------------
# adjunction


@dataclass
class AdjunctionReport:
    left: list
    right: list
    name: str = ""

    @property
    def ok(self) -> bool:
        return self.left == self.right

    def __bool__(self) -> bool:
        return self.ok


def adjunction_check(f: MGMorphism, F: Sheaf, H: Sheaf, d_max: int, name: str = "") -> AdjunctionReport:
    """Compare ``dim Hom(f^* H, F)_d`` with ``dim Hom(H, f_* F)_d`` for ``d = 0..d_max`` (doubled degrees)."""
    D = d_max // 2
    left = hom_dims(pullback(f, H), F, D)
    right = hom_dims(H, pushforward(f, F), D)
    return AdjunctionReport(left, right, name)


# ---------------------------------------------------------------------------
# per / opp / stab


def transport(F: Sheaf, target: MomentGraph, vertex_map: Sequence[int]) -> Sheaf:
    """Move sheaf data along a bijection of vertices that preserves edges and labels."""
    G = F.graph
    inv = {a: i for i, a in enumerate(vertex_map)}
    if sorted(inv) != list(range(target.n)):
        raise GraphError("vertex map is not a bijection")
    stalk_gens = [list(F.stalk_gens[inv[u]]) for u in range(target.n)]
    edge_gens = []
    rho = {}
    for kk, et in enumerate(target.edges):
        k = G.edge_between(inv[et.src], inv[et.dst])
        if k is None:
            raise GraphError(f"target edge {kk} has no source edge")
        if tuple(G.edges[k].label) != tuple(et.label) and tuple(-x for x in G.edges[k].label) != tuple(et.label):
            raise GraphError(f"labels disagree on edge {kk}")
        edge_gens.append(list(F.edge_gens[k]))
        for u in (et.src, et.dst):
            rho[(u, kk)] = F.rho[(inv[u], k)]
    if len(target.edges) != len(G.edges):
        raise GraphError("edge sets differ")
    return Sheaf(target, F.ring, stalk_gens, edge_gens, rho, meta=dict(F.meta))


def per_functor(F: Sheaf, G_per: MomentGraph) -> Sheaf:
    """Same stalks and restriction maps on the periodic graph with the same vertices."""
    vm = map_by_elements(F.graph, G_per, lambda x: x)
    out = transport(F, G_per, vm)
    out.meta["functor"] = "per"
    return out


def opp_functor(F_per: Sheaf, G_stab: MomentGraph) -> Sheaf:
    return pullback(opp_iso(G_stab, F_per.graph), F_per)


def stab_functor(F_par: Sheaf, G_stab: MomentGraph) -> Sheaf:
    """Pullback along the inclusion of the stable graph; non-stable edge data is dropped."""
    out = pullback(inclusion_g(G_stab, F_par.graph), F_par)
    out.meta["functor"] = "stab"
    return out


@dataclass
class CompositeResult:
    sheaf: Sheaf
    graphs: dict = dc_field(default_factory=dict)


def stab_composite(W: AffineWeylGroup, I: IntervalSpec, F_par: Sheaf, ball_radius: int | None = None) -> CompositeResult:
    """``stab`` as the composite of five functors.

    1. push forward from the interval into the lower ideal of its top,
    2. pull back to the regular graph on all elements over that ideal,
    3. reinterpret on the periodic graph with the same vertices,
    4. restrict to the minimal coset representatives of the interval,
    5. identify those with the stable alcoves via ``x -> x^-1``.
    """
    G_par = F_par.graph
    fin = W.finite_indices
    top = I.top
    G_big = parabolic_graph_alcoves(W, IntervalSpec(W.identity, top))
    i = MGMorphism(G_par, G_big, map_by_elements(G_par, G_big, lambda x: x))
    step1 = pushforward(i, F_par)

    wf = max(W.parabolic_subgroup(fin), key=lambda z: z.length)
    window = sorted(W.lower_ideal(top.inverse() * wf), key=lambda z: (z.length, z.reduced_word))
    G_reg = regular_graph_on(W, window)
    p_map = map_by_elements(G_reg, G_big, lambda y: W.min_coset_rep(y, fin).inverse())
    p = MGMorphism(G_reg, G_big, p_map)
    step2 = pullback(p, step1)

    radius = ball_radius if ball_radius is not None else max(z.length for z in window) + 4
    G_per = periodic_graph_on(W, window, radius)
    step3 = per_functor(step2, G_per)

    keep = [v.id for v in G_per.vertices if W.is_min_coset_rep(v.element, fin) and v.element.inverse() in G_par.index]
    G_sub = G_per.restrict(keep)
    j = MGMorphism(G_sub, G_per, map_by_elements(G_sub, G_per, lambda x: x))
    step4 = pullback(j, step3)

    G_stab = stable_graph(W, I)
    vm = map_by_elements(G_sub, G_stab, lambda x: x.inverse())
    step5 = transport(step4, G_stab, vm)
    step5.meta["functor"] = "stab-composite"
    return CompositeResult(step5, {"big": G_big, "regular": G_reg, "periodic": G_per, "sub": G_sub, "stable": G_stab})

