"""The structure algebra of a regular moment graph and the two automorphisms
attached to a simple reflection ``s``: ``z -> (z_{xs})_x`` and
``z -> (tau_s(z_{sx}))_x``, with their invariants and decompositions.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..fields import CoefficientField, QQ
from ..graphs import MomentGraph, regular_graph_on
from ..weyl import AffineWeylGroup, AffWeylElt
from .sheaf import label_ring, structure_sheaf


class StructureAlgebra:
    """Global sections of the structure sheaf, tuples of polynomials indexed by vertices."""

    def __init__(self, G: MomentGraph, field: CoefficientField = QQ, ring=None):
        self.graph = G
        self.ring = ring or label_ring(G, field)
        self.field = self.ring.field
        self.sheaf = structure_sheaf(G, self.ring)
        self._basis: dict = {}

    def basis(self, d: int) -> list:
        if d not in self._basis:
            secs = self.sheaf.sections(range(self.graph.n), d)
            self._basis[d] = [
                tuple(self.ring.from_vector(sec[v], d) for v in range(self.graph.n)) for sec in secs
            ]
        return self._basis[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d)) if d >= 0 else 0

    def vector(self, z, d: int) -> list:
        out = []
        for p in z:
            out.extend(self.ring.to_vector(p, d))
        return out

    def contains(self, z) -> bool:
        for k, e in enumerate(self.graph.edges):
            Q = self.sheaf.quotient(k)
            if Q.reduce(self.ring.sub(z[e.src], z[e.dst])):
                return False
        return True

    def multiply(self, z, y):
        return tuple(self.ring.mul(a, b) for a, b in zip(z, y))

    def constant(self, p):
        return tuple(dict(p) for _ in range(self.graph.n))

    def rank(self, elements, d: int) -> int:
        rows = [self.vector(z, d) for z in elements]
        ncols = self.graph.n * self.ring.dim(d)
        return self.field.rank(rows, ncols) if rows else 0

    def _span_combination(self, coeffs, basis):
        out = [dict() for _ in range(self.graph.n)]
        for a, z in zip(coeffs, basis):
            if a == 0:
                continue
            for v in range(self.graph.n):
                out[v] = self.ring.add(out[v], self.ring.scale(a, z[v]))
        return tuple(out)

    def invariants(self, auto, d: int) -> list:
        """Basis of the degree-``d`` elements fixed by ``auto``."""
        basis = self.basis(d)
        if not basis:
            return []
        ncols = self.graph.n * self.ring.dim(d)
        diffs = []
        for z in basis:
            img = auto(z)
            diffs.append([a - b for a, b in zip(self.vector(img, d), self.vector(z, d))])
        # columns are the differences; solve sum a_i diff_i = 0
        rows = [list(r) for r in zip(*diffs)] if ncols else []
        null = self.field.nullspace(rows, len(basis))
        return [self._span_combination(v, basis) for v in null]


def s_closed_vertex_set(W: AffineWeylGroup, s: int, radius: int) -> list[AffWeylElt]:
    """``{ s^a x s^b : l(x) <= radius }``, closed under left and right multiplication by ``s``."""
    t = W.s[s]
    out = set()
    for x in W.ball(radius):
        out.update({x, x * t, t * x, t * x * t})
    return sorted(out, key=lambda z: (z.length, z.reduced_word))


@dataclass
class SigmaReport:
    s: int
    degrees: list
    automorphism_right: bool
    automorphism_left: bool
    c_in_algebra: bool
    alpha_in_algebra: bool
    dims: dict = dc_field(default_factory=dict)
    decomposition_i: bool = True
    decomposition_ii: bool = True
    literal_ii: bool = True
    witness: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.automorphism_right and self.automorphism_left and self.c_in_algebra
                and self.alpha_in_algebra and self.decomposition_i and self.decomposition_ii)


def sigma_automorphisms(W: AffineWeylGroup, s: int, radius: int, d_max: int, field: CoefficientField = QQ) -> SigmaReport:
    """Check both automorphisms and the decompositions up to the doubled degree ``d_max``.

    (i)  ``Z = Z^s (+) c^s Z^s`` with ``c^s_x = x(alpha_s)``;
    (ii) ``Z = ^sZ (+) alpha_s ^sZ`` with ``alpha_s`` the constant section.
    ``literal_ii`` records the variant with ``Z^s`` in the second summand of (ii).
    """
    elems = s_closed_vertex_set(W, s, radius)
    G = regular_graph_on(W, elems)
    Z = StructureAlgebra(G, field)
    ring = Z.ring
    t = W.s[s]
    idx = G.index
    right = [idx[x * t] for x in (v.element for v in G.vertices)]
    left = [idx[t * x] for x in (v.element for v in G.vertices)]
    tau = t.coroot_action()
    simple = W.rs.affine_coroot(W.rs.affine_simple_roots[s]).as_tuple()

    def sigma_right(z):
        return tuple(z[right[v]] for v in range(G.n))

    def sigma_left(z):
        return tuple(ring.apply_linear_map(z[left[v]], tau) for v in range(G.n))

    c_s = tuple(ring.linear(v.element.act_on_coroot(simple)) for v in G.vertices)
    alpha_s = Z.constant(ring.linear(simple))
    rep = SigmaReport(s, list(range(d_max // 2 + 1)), True, True, Z.contains(c_s), Z.contains(alpha_s))

    for d in range(d_max // 2 + 1):
        basis = Z.basis(d)
        for name, auto in (("right", sigma_right), ("left", sigma_left)):
            imgs = [auto(z) for z in basis]
            if not all(Z.contains(y) for y in imgs) or Z.rank(imgs, d) != len(basis):
                setattr(rep, f"automorphism_{name}", False)
                rep.witness.append((name, d, "not an automorphism"))
        if d == 1:
            one = Z.constant(ring.one())
            for auto, name in ((sigma_right, "right"), (sigma_left, "left")):
                if auto(one) != one:
                    setattr(rep, f"automorphism_{name}", False)
                for a in basis:
                    for b in basis:
                        if auto(Z.multiply(a, b)) != Z.multiply(auto(a), auto(b)):
                            setattr(rep, f"automorphism_{name}", False)
                            rep.witness.append((name, d, "not multiplicative"))
        inv_r = Z.invariants(sigma_right, d)
        inv_l = Z.invariants(sigma_left, d)
        inv_r_low = Z.invariants(sigma_right, d - 1) if d else []
        inv_l_low = Z.invariants(sigma_left, d - 1) if d else []
        part_i = inv_r + [Z.multiply(c_s, z) for z in inv_r_low]
        part_ii = inv_l + [Z.multiply(alpha_s, z) for z in inv_l_low]
        part_lit = inv_l + [Z.multiply(alpha_s, z) for z in inv_r_low]
        dim_d = len(basis)
        rep.dims[d] = {
            "Z": dim_d,
            "Z^s": len(inv_r),
            "c^s Z^s": len(inv_r_low),
            "^sZ": len(inv_l),
            "alpha_s ^sZ": len(inv_l_low),
        }
        ok_i = len(part_i) == dim_d and Z.rank(part_i, d) == dim_d and all(Z.contains(z) for z in part_i)
        ok_ii = len(part_ii) == dim_d and Z.rank(part_ii, d) == dim_d and all(Z.contains(z) for z in part_ii)
        ok_lit = len(part_lit) == dim_d and Z.rank(part_lit, d) == dim_d
        if not ok_i:
            rep.decomposition_i = False
            rep.witness.append(("i", d))
        if not ok_ii:
            rep.decomposition_ii = False
            rep.witness.append(("ii", d))
        if not ok_lit:
            rep.literal_ii = False
    return rep
