"""Sheaves on moment graphs with degree-wise exact linear algebra.

A sheaf stores, for every vertex, the generator degrees of a graded free
``S``-module (the ambient module of the stalk), and for every edge the
generator degrees of a free ``S/l(E)``-module.  Restriction maps are matrices
of polynomials reduced modulo the edge label.  Stalks may be given as graded
submodules of their ambient free modules (this is how pushforwards are
represented); such stalks supply a basis for each degree.

Degrees are counted in polynomial degree; the geometric grading doubles them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..fields import CoefficientField, QQ
from ..graphs import MomentGraph
from .ring import Poly, PolyRing, QuotientRing


class TruncationRisk(RuntimeError):
    """A generator appeared close to the degree bound, so results may be incomplete."""


class OpenSetLimit(RuntimeError):
    pass


def label_ring(G: MomentGraph, field: CoefficientField = QQ) -> PolyRing:
    names = ["a", "b", "g"][: G.rs.rank] if G.rs.rank <= 3 else [f"a{i}" for i in range(1, G.rs.rank + 1)]
    return PolyRing(G.lattice_rank, field, names + ["c"])


def matmul(A: Sequence[Sequence], B: Sequence[Sequence], zero) -> list:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        r = [zero] * ncols
        for k in range(inner):
            a = row[k]
            if a == 0:
                continue
            bk = B[k]
            for j in range(ncols):
                b = bk[j]
                if b != 0:
                    r[j] += a * b
        out.append(r)
    return out


def transpose(A: Sequence[Sequence], nrows_if_empty: int = 0) -> list:
    if not A:
        return [[] for _ in range(nrows_if_empty)]
    return [list(col) for col in zip(*A)]


class Sheaf:
    def __init__(
        self,
        graph: MomentGraph,
        ring: PolyRing,
        stalk_gens: Sequence[Sequence[int]],
        edge_gens: Sequence[Sequence[int]],
        rho: dict,
        twists: Sequence | None = None,
        stalk_spaces: dict | None = None,
        meta: dict | None = None,
    ):
        self.graph = graph
        self.ring = ring
        self.field = ring.field
        self.stalk_gens = [list(g) for g in stalk_gens]
        self.edge_gens = [list(g) for g in edge_gens]
        self.rho = rho
        self.twists = list(twists) if twists is not None else [None] * graph.n
        self.stalk_spaces = stalk_spaces or {}
        self.meta = dict(meta or {})
        self._quot = [ring.quotient(e.label) for e in graph.edges]
        self._rho_cache: dict = {}
        self._space_cache: dict = {}

    # -- basic data -----------------------------------------------------------
    def quotient(self, k: int) -> QuotientRing:
        return self._quot[k]

    def is_free(self, v: int) -> bool:
        return v not in self.stalk_spaces

    def ambient_basis(self, v: int, d: int) -> list:
        return [(i, m) for i, g in enumerate(self.stalk_gens[v]) for m in self.ring.monomials(d - g)]

    def edge_basis(self, k: int, d: int) -> list:
        Q = self._quot[k]
        return [(j, m) for j, g in enumerate(self.edge_gens[k]) for m in Q.basis(d - g)]

    def ambient_dim(self, v: int, d: int) -> int:
        return sum(self.ring.dim(d - g) for g in self.stalk_gens[v])

    def edge_dim(self, k: int, d: int) -> int:
        Q = self._quot[k]
        return sum(Q.dim(d - g) for g in self.edge_gens[k])

    def stalk_basis(self, v: int, d: int) -> list | None:
        """Basis of the stalk in degree ``d`` as ambient vectors; None means the whole ambient slice."""
        if v not in self.stalk_spaces:
            return None
        key = (v, d)
        if key not in self._space_cache:
            self._space_cache[key] = self.stalk_spaces[v](d)
        return self._space_cache[key]

    def stalk_dim(self, v: int, d: int) -> int:
        b = self.stalk_basis(v, d)
        return self.ambient_dim(v, d) if b is None else len(b)

    def stalk_rank(self, v: int) -> list:
        """Generator degrees of a free stalk."""
        if not self.is_free(v):
            raise ValueError("stalk is not presented as a free module")
        return sorted(self.stalk_gens[v])

    # -- vectors <-> polynomial tuples ----------------------------------------------
    def ambient_to_polys(self, v: int, vec: Sequence, d: int) -> list:
        out = [{} for _ in self.stalk_gens[v]]
        for (i, m), c in zip(self.ambient_basis(v, d), vec):
            if c != 0:
                out[i][m] = c
        return out

    def polys_to_ambient(self, v: int, polys: Sequence[Poly], d: int) -> list:
        F = self.field
        index = {b: n for n, b in enumerate(self.ambient_basis(v, d))}
        vec = [F.zero] * len(index)
        for i, p in enumerate(polys):
            for m, c in p.items():
                vec[index[(i, m)]] = c
        return vec

    def edge_to_polys(self, k: int, vec: Sequence, d: int) -> list:
        out = [{} for _ in self.edge_gens[k]]
        for (j, m), c in zip(self.edge_basis(k, d), vec):
            if c != 0:
                out[j][m] = c
        return out

    def edge_polys_to_vector(self, k: int, polys: Sequence[Poly], d: int) -> list:
        """Reduce each component modulo the label and return slice coordinates."""
        F = self.field
        Q = self._quot[k]
        index = {b: n for n, b in enumerate(self.edge_basis(k, d))}
        vec = [F.zero] * len(index)
        for j, p in enumerate(polys):
            for m, c in Q.reduce(p).items():
                vec[index[(j, m)]] += c
        return vec

    # -- restriction maps ---------------------------------------------------
    def rho_matrix(self, v: int, k: int) -> list:
        return self.rho[(v, k)]

    def rho_slice(self, v: int, k: int, d: int) -> list:
        """Matrix (rows: edge slice coordinates, columns: ambient slice) of ``rho_{v,k}`` in degree ``d``."""
        key = (v, k, d)
        hit = self._rho_cache.get(key)
        if hit is not None:
            return hit
        R = self.rho[(v, k)]
        Q = self._quot[k]
        F = self.field
        index = {b: n for n, b in enumerate(self.edge_basis(k, d))}
        cols = []
        for (i, m) in self.ambient_basis(v, d):
            col = [F.zero] * len(index)
            for j in range(len(self.edge_gens[k])):
                entry = R[j][i]
                if not entry:
                    continue
                prod = Q.reduce(self.ring.mono_mul(m, entry))
                for mm, c in prod.items():
                    col[index[(j, mm)]] += c
            cols.append(col)
        out = transpose(cols, len(index))
        self._rho_cache[key] = out
        return out

    def edge_mult(self, k: int, p: Poly, d: int) -> list:
        """Matrix of multiplication by ``p`` from edge slice ``d`` to slice ``d + deg p``."""
        F = self.field
        Q = self._quot[k]
        dp = self.ring.degree(p) or 0
        target = {b: n for n, b in enumerate(self.edge_basis(k, d + dp))}
        cols = []
        for (j, m) in self.edge_basis(k, d):
            col = [F.zero] * len(target)
            for mm, c in Q.reduce(self.ring.mono_mul(m, p)).items():
                col[target[(j, mm)]] += c
            cols.append(col)
        return transpose(cols, len(target))

    def restricted_rho(self, v: int, k: int, d: int) -> list:
        """``rho_{v,k}`` composed with the stalk basis in degree ``d``."""
        R = self.rho_slice(v, k, d)
        B = self.stalk_basis(v, d)
        if B is None:
            return R
        return matmul(R, transpose(B, self.ambient_dim(v, d)), self.field.zero)

    # -- sections -----------------------------------------------------------
    def sections(self, subset: Iterable[int], d: int) -> list[dict]:
        """Basis of ``Gamma(subset)_d``; each element maps vertex -> ambient vector."""
        subset = sorted(set(subset))
        F = self.field
        offsets = {}
        total = 0
        for v in subset:
            offsets[v] = total
            total += self.stalk_dim(v, d)
        if total == 0:
            return []
        rows = []
        inside = set(subset)
        for k, e in enumerate(self.graph.edges):
            if e.src not in inside or e.dst not in inside:
                continue
            A = self.restricted_rho(e.src, k, d)
            B = self.restricted_rho(e.dst, k, d)
            for ra, rb in zip(A, B):
                row = [F.zero] * total
                o = offsets[e.src]
                for t, x in enumerate(ra):
                    row[o + t] = x
                o = offsets[e.dst]
                for t, x in enumerate(rb):
                    row[o + t] -= x
                rows.append(row)
        null = F.nullspace(rows, total)
        out = []
        for vec in null:
            sec = {}
            for v in subset:
                coords = vec[offsets[v]: offsets[v] + self.stalk_dim(v, d)]
                B = self.stalk_basis(v, d)
                if B is None:
                    sec[v] = coords
                else:
                    amb = [F.zero] * self.ambient_dim(v, d)
                    for coef, b in zip(coords, B):
                        if coef != 0:
                            for t, x in enumerate(b):
                                amb[t] += coef * x
                    sec[v] = amb
            out.append(sec)
        return out

    def section_space(self, subset: Iterable[int], d_max: int) -> "SectionSpace":
        subset = tuple(sorted(set(subset)))
        return SectionSpace(self, subset, {d: self.sections(subset, d) for d in range(d_max + 1)}, d_max)

    def is_section(self, sec: dict, d: int) -> bool:
        """Check edge compatibility of a tuple of ambient vectors (all internal edges)."""
        F = self.field
        for k, e in enumerate(self.graph.edges):
            if e.src in sec and e.dst in sec:
                a = matvec(self.rho_slice(e.src, k, d), sec[e.src], F.zero)
                b = matvec(self.rho_slice(e.dst, k, d), sec[e.dst], F.zero)
                if a != b:
                    return False
        return True

    # -- summaries ------------------------------------------------------------
    def graded_ranks(self) -> list:
        from ..polys import GradedRank
        return [GradedRank.from_exponents(self.stalk_gens[v]) for v in range(self.graph.n)]

    def __repr__(self) -> str:
        return f"Sheaf on {self.graph!r}"


def matvec(M: Sequence[Sequence], v: Sequence, zero) -> list:
    out = []
    for row in M:
        s = zero
        for a, b in zip(row, v):
            if a != 0 and b != 0:
                s += a * b
        out.append(s)
    return out


@dataclass
class SectionSpace:
    sheaf: Sheaf
    subset: tuple
    bases: dict
    d_max: int

    def dim(self, d: int) -> int:
        return len(self.bases.get(d, []))

    def dims(self) -> list:
        return [self.dim(d) for d in range(self.d_max + 1)]

    def as_polys(self, d: int) -> list[dict]:
        return [{v: self.sheaf.ambient_to_polys(v, vec, d) for v, vec in sec.items()} for sec in self.bases[d]]


# ---------------------------------------------------------------------------
# constructions


def structure_sheaf(G: MomentGraph, ring: PolyRing | None = None, field: CoefficientField = QQ) -> Sheaf:
    ring = ring or label_ring(G, field)
    G.validate(ring.field)
    one = ring.one()
    rho = {}
    for k, e in enumerate(G.edges):
        rho[(e.src, k)] = [[one]]
        rho[(e.dst, k)] = [[one]]
    return Sheaf(G, ring, [[0] for _ in range(G.n)], [[0] for _ in G.edges], rho, meta={"kind": "structure"})


def zero_sheaf(G: MomentGraph, ring: PolyRing) -> Sheaf:
    return Sheaf(G, ring, [[] for _ in range(G.n)], [[] for _ in G.edges], {}, meta={"kind": "zero"})


# ---------------------------------------------------------------------------
# open sets and flabbiness


def upper_sets(G: MomentGraph, subset: Iterable[int] | None = None, limit: int = 20000) -> list[frozenset]:
    """All upward closed subsets (within ``subset`` if given), including the empty set."""
    verts = sorted(subset if subset is not None else range(G.n), key=lambda v: -len(G.below(v)))
    vs = set(verts)
    above = {v: [u for u in G.above(v) if u in vs] for v in verts}
    out: list[frozenset] = []

    def rec(i: int, chosen: frozenset):
        if len(out) > limit:
            raise OpenSetLimit(f"more than {limit} open subsets")
        if i == len(verts):
            out.append(chosen)
            return
        v = verts[i]
        rec(i + 1, chosen)
        if all(u in chosen for u in above[v]):
            rec(i + 1, chosen | {v})

    rec(0, frozenset())
    return out


@dataclass
class FlabbyReport:
    ok: bool
    d_max: int
    witness: tuple | None = None
    opens_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _restriction_rank(F: Sheaf, global_basis: list[dict], subset: Iterable[int]) -> int:
    subset = sorted(subset)
    rows = []
    for sec in global_basis:
        row = []
        for v in subset:
            row.extend(sec[v])
        rows.append(row)
    ncols = len(rows[0]) if rows else 0
    return F.field.rank(rows, ncols)


def is_flabby(F: Sheaf, d_max: int, limit: int = 20000, support: Iterable[int] | None = None) -> FlabbyReport:
    """Surjectivity of ``Gamma(all) -> Gamma(I)`` for every open ``I``, degrees ``0..d_max`` (polynomial degree)."""
    verts = sorted(support) if support is not None else list(range(F.graph.n))
    opens = [I for I in upper_sets(F.graph, verts, limit) if I and len(I) < len(verts)]
    for d in range(d_max + 1):
        glob = F.sections(verts, d)
        for I in opens:
            dim_I = len(F.sections(I, d))
            if _restriction_rank(F, glob, I) != dim_I:
                return FlabbyReport(False, d_max, (tuple(sorted(I)), d), len(opens))
    return FlabbyReport(True, d_max, None, len(opens))


def is_flabby_local(F: Sheaf, d_max: int, support: Iterable[int] | None = None) -> FlabbyReport:
    """Local criterion: ``Gamma({>=x}) -> Gamma({>x})`` surjective for every vertex ``x``."""
    G = F.graph
    verts = sorted(support) if support is not None else list(range(G.n))
    vs = set(verts)
    for d in range(d_max + 1):
        for x in verts:
            up = [y for y in G.above(x) if y in vs]
            if not up:
                continue
            closed = sorted(up + [x])
            basis = F.sections(closed, d)
            if _restriction_rank(F, basis, up) != len(F.sections(up, d)):
                return FlabbyReport(False, d_max, ((x,), d), len(verts))
    return FlabbyReport(True, d_max, None, len(verts))


# ---------------------------------------------------------------------------
# morphisms


def hom_dim(A: Sheaf, N: Sheaf, d: int, degree_bound: int | None = None) -> int:
    """Dimension of the space of sheaf morphisms ``A -> N`` raising degree by ``d``.

    ``A`` must have free stalks; ``N`` may have submodule stalks.  Unknowns
    are the images of the generators of every stalk and edge module of ``A``;
    equations are the commuting squares with the restriction maps.
    """
    G = A.graph
    if N.graph is not G and (N.graph.n != G.n or len(N.graph.edges) != len(G.edges)):
        raise ValueError("sheaves live on different graphs")
    Fd = A.field
    zero = Fd.zero
    offsets = {}
    total = 0
    for v in range(G.n):
        if not A.is_free(v):
            raise ValueError("source sheaf must have free stalks")
        for i, g in enumerate(A.stalk_gens[v]):
            offsets[("v", v, i)] = total
            total += N.stalk_dim(v, g + d)
    for k in range(len(G.edges)):
        for j, g in enumerate(A.edge_gens[k]):
            offsets[("e", k, j)] = total
            total += N.edge_dim(k, g + d)
    if total == 0:
        return 0
    rows = []
    for k, e in enumerate(G.edges):
        for v in (e.src, e.dst):
            R = A.rho[(v, k)]
            for i, g in enumerate(A.stalk_gens[v]):
                deg = g + d
                nrows = N.edge_dim(k, deg)
                if nrows == 0:
                    continue
                block = [[zero] * total for _ in range(nrows)]
                # rho^N applied to the image of the stalk generator
                M = N.restricted_rho(v, k, deg)
                o = offsets[("v", v, i)]
                for r in range(nrows):
                    for t, x in enumerate(M[r]):
                        block[r][o + t] = x
                # minus the edge map applied to rho^A of the generator
                for j, ge in enumerate(A.edge_gens[k]):
                    entry = R[j][i]
                    if not entry:
                        continue
                    Mult = N.edge_mult(k, entry, ge + d)
                    o2 = offsets[("e", k, j)]
                    for r in range(nrows):
                        for t, x in enumerate(Mult[r]):
                            if x != 0:
                                block[r][o2 + t] -= x
                rows.extend(block)
    return len(Fd.nullspace(rows, total))


def hom_dims(A: Sheaf, N: Sheaf, d_max: int) -> list:
    return [hom_dim(A, N, d) for d in range(d_max + 1)]
