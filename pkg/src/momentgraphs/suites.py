"""Named verification suites shared by the command line and the test-suite.

Each suite returns a list of :class:`CheckResult`; a suite passes when all do.
Independent jobs may run in worker processes, capped by ``MG_THREADS``.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from .checks import CheckResult, order_suite
from .fields import CoefficientField, QQ
from .graphs import (
    IntervalSpec,
    NotFound,
    bruhat_graph,
    classify_edges,
    find_m0,
    identity_morphism,
    inclusion_g,
    is_gkm,
    map_to_point,
    parabolic_graph_alcoves,
    point_graph,
    stable_graph,
    stable_translation_iso,
    translate_interval,
    verify_label_translation,
)
from .polys import kl_alcoves, kl_regular
from .roots import vscale
from .sheaves.algebra import sigma_automorphisms
from .sheaves.bmp import bmp_construct
from .sheaves.functors import adjunction_check, pullback, stab_composite, stab_functor
from .sheaves.sheaf import is_flabby, label_ring, structure_sheaf
from .sheaves.subgeneric import appendix_verify, stable_a1, subgeneric_section
from .weyl import AffineWeylGroup, affine_weyl_group, sort_key


def max_workers() -> int:
    try:
        return max(1, int(os.environ.get("MG_THREADS", "1")))
    except ValueError:
        return 1


def run_jobs(fn: Callable, jobs: Sequence) -> list:
    """``[fn(*job) for job in jobs]``, in order, possibly in parallel."""
    n = min(max_workers(), len(jobs))
    if n <= 1:
        return [fn(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, *zip(*jobs)))


def _field(field) -> CoefficientField:
    return field if isinstance(field, CoefficientField) else CoefficientField.parse(str(field))


# ---------------------------------------------------------------------------
# orders, labels, GKM


def suite_orders(type_: str = "A1", radius: int = 6, small_radius: int = 4, n_max: int = 8) -> list[CheckResult]:
    return order_suite(affine_weyl_group(type_), radius, small_radius, n_max)


def suite_labels(type_: str, I: IntervalSpec, mu: Sequence) -> list[CheckResult]:
    """Labels of a parabolic interval against their translates by ``mu``."""
    W = affine_weyl_group(type_)
    G = classify_edges(parabolic_graph_alcoves(W, I))
    checks = verify_label_translation(W, G, mu)
    out = []
    for cls in ("stable", "nonstable"):
        part = [c for c in checks if c.cls == cls]
        bad = next((c for c in part if not c.ok), None)
        out.append(CheckResult(f"labels[{cls}]", bad is None, len(part), bad and (bad.edge, bad.expected, bad.found)))
    others = [c for c in checks if c.cls == "other"]
    out.append(CheckResult("labels[other edges absent]", not others, len(others), others[0].edge if others else None))
    return out


def a1_interval(W: AffineWeylGroup, bottom: int, top: int) -> IntervalSpec:
    from .graphs import alcove_of_lattice_point

    return IntervalSpec(alcove_of_lattice_point(W, (bottom,)), alcove_of_lattice_point(W, (top,)))


def a1_chain(n: int) -> list[int]:
    """Lattice points of the first ``n`` dominant A1 alcoves in increasing order: 0, 1, -1, 2, -2, ..."""
    return [(k + 1) // 2 if k % 2 else -(k // 2) for k in range(n)]


def gkm_failure_witness(p: int) -> tuple[IntervalSpec, tuple]:
    """An A1 parabolic interval with the labels ``-a+c`` and ``-a+(p+1)c`` meeting at ``0``."""
    W = affine_weyl_group("A1")
    I = a1_interval(W, 0, -(p + 1))
    return I, ((-1, 1), (-1, p + 1))


def dependent_label_pairs(G, p: int) -> list[tuple]:
    """Pairs of distinct edges at a common vertex whose labels are proportional mod ``p``
    (``p = 0`` for the rationals), found through 2x2 minors."""
    out = []
    for v in range(G.n):
        inc = sorted(G.incident(v))
        for i, k1 in enumerate(inc):
            for k2 in inc[i + 1:]:
                a, b = G.edges[k1].label, G.edges[k2].label
                minors = [a[i1] * b[j1] - a[j1] * b[i1] for i1 in range(len(a)) for j1 in range(i1 + 1, len(a))]
                if all((m == 0) if p == 0 else (m.numerator % p == 0) for m in minors):
                    out.append((v, k1, k2))
    return out


def suite_gkm(type_: str, I: IntervalSpec, field: CoefficientField = QQ, p_witness: int | None = 3) -> list[CheckResult]:
    """Rationals must give GKM pairs; over a finite field the verdict of :func:`is_gkm`
    must agree with the minor oracle, whichever way it goes."""
    W = affine_weyl_group(type_)
    field = _field(field)
    out = []
    for kind, build in (("parabolic", parabolic_graph_alcoves), ("stable", stable_graph)):
        G = build(W, I)
        r = is_gkm(G, QQ)
        out.append(CheckResult(f"gkm[{kind} over Q]", bool(r), len(G.edges), r.witness))
        if field.p:
            r = is_gkm(G, field)
            bad = dependent_label_pairs(G, field.p)
            agree = bool(r) == (not bad)
            out.append(CheckResult(f"gkm[{kind} over {field.name}] agrees with minor oracle", agree,
                                   len(G.edges), r.witness, {"gkm": bool(r), "dependent_pairs": bad}))
    if p_witness is not None and type_ == "A1":
        J, labels = gkm_failure_witness(p_witness)
        G = parabolic_graph_alcoves(W, J)
        Fp = CoefficientField(p_witness)
        r = is_gkm(G, Fp)
        zero = G.vertex_of(J.bottom)
        present = {tuple(int(x) for x in G.edges[k].label) for k in G.incident(zero)}
        dependent = Fp.rank([list(v) for v in labels], 2) < 2
        found = not r and set(labels) <= present and dependent
        out.append(CheckResult(f"gkm failure detected over F{p_witness}", found, len(G.edges), r.witness))
        out.append(CheckResult("gkm same interval over Q", bool(is_gkm(G, QQ)), len(G.edges)))
    return out


# ---------------------------------------------------------------------------
# canonical sheaves against polynomials


def _regular_job(type_: str, word: tuple, field_name: str):
    W = affine_weyl_group(type_)
    w = W.from_word(word)
    G = bruhat_graph(W, (), IntervalSpec(W.identity, w))
    F = bmp_construct(G, G.vertex_of(w), field=_field(field_name))
    bad = []
    for v in range(G.n):
        got = F.graded_ranks()[v].coefficient_list()
        want = list(kl_regular(W, G.element(v), w).coefficients)
        if got != want:
            bad.append((G.element(v).word_string(), got, want))
    return w.word_string(), G.n, bad, F.meta["truncation_risk"]


def _parabolic_job(type_: str, word: tuple, field_name: str):
    W = affine_weyl_group(type_)
    w = W.from_word(word)
    G = parabolic_graph_alcoves(W, IntervalSpec(W.identity, w))
    F = bmp_construct(G, G.vertex_of(w), field=_field(field_name))
    bad = []
    for v in range(G.n):
        got = F.graded_ranks()[v].coefficient_list()
        want = list(kl_alcoves(W, G.element(v), w).coefficients)
        if got != want:
            bad.append((G.element(v).word_string(), got, want))
    return w.word_string(), G.n, bad, F.meta["truncation_risk"]


def suite_fiebig(type_: str = "A1", max_gap: int = 6, field: CoefficientField = QQ) -> list[CheckResult]:
    """Stalk ranks of canonical sheaves equal KL polynomials, regular and parabolic.

    Every interval ``[x, w]`` with ``l(w) - l(x) <= max_gap`` and bottom ``e`` is
    covered by the sheaf on ``[e, w]``, because stalks of ``B(w)`` do not depend
    on the chosen bottom.
    """
    W = affine_weyl_group(type_)
    field = _field(field)
    ball = sorted(W.ball(max_gap), key=sort_key)
    reg = run_jobs(_regular_job, [(type_, w.reduced_word, field.name) for w in ball])
    dom = [w for w in ball if w.is_dominant()]
    par = run_jobs(_parabolic_job, [(type_, w.reduced_word, field.name) for w in dom])
    out = []
    for name, results in (("fiebig[regular]", reg), ("fiebig[parabolic]", par)):
        bad = next(((w, b) for w, _n, b, _r in results if b), None)
        risk = [w for w, _n, _b, r in results if r]
        out.append(CheckResult(name, bad is None, sum(n for _w, n, _b, _r in results), bad))
        out.append(CheckResult(name + " truncation", not risk, len(results), risk[:1] or None))
    return out


def suite_subgeneric(max_vertices: int = 7, d_max: int = 16, field: CoefficientField = QQ) -> list[CheckResult]:
    """A1 parabolic intervals from ``0``: rank one stalks, flabby structure sheaf, step-by-step checks."""
    W = affine_weyl_group("A1")
    field = _field(field)
    out = []
    seq = a1_chain(2 * max_vertices)
    pairs = [(a, b) for i, a in enumerate(seq) for b in seq[i + 1:i + max_vertices]]
    for a, b in pairs:
        I = a1_interval(W, a, b)
        tag = f"[{a}a, {b}a]"
        G = parabolic_graph_alcoves(W, I)
        top = G.vertex_of(I.top)
        F = bmp_construct(G, top, d_max=d_max, field=field)
        ranks = [r.coefficient_list() for r in F.graded_ranks()]
        out.append(CheckResult(f"rank one {tag}", all(r == [1] for r in ranks), G.n, ranks))
        out.append(CheckResult(f"no truncation risk {tag}", not F.meta["truncation_risk"], G.n,
                               F.meta["risk_witnesses"] or None))
        Z = structure_sheaf(G, F.ring)
        rep = is_flabby(Z, d_max // 2)
        out.append(CheckResult(f"structure sheaf flabby {tag}", rep.ok, rep.opens_checked, rep.witness))
        app = appendix_verify(W, I, d_max, field)
        for name, ok in app.by_step().items():
            bad = next((r.detail for r in app.results if r.name == name and not r.ok), None)
            out.append(CheckResult(f"{name} {tag}", ok, sum(r.name == name for r in app.results), bad))
    return out


def suite_appendix(I: IntervalSpec, d_max: int = 8, field: CoefficientField = QQ) -> list[CheckResult]:
    W = affine_weyl_group("A1")
    rep = appendix_verify(W, I, d_max, _field(field))
    out = []
    for name, ok in rep.by_step().items():
        bad = next((r.detail for r in rep.results if r.name == name and not r.ok), None)
        out.append(CheckResult(name, ok, sum(r.name == name for r in rep.results), bad))
    return out


def suite_stable_sections(max_vertices: int = 7, d_max: int = 16, r_max: int = 3, field: CoefficientField = QQ) -> list[CheckResult]:
    """Structure sheaves on A1 stable intervals are flabby; even and odd sections satisfy all congruences."""
    W = affine_weyl_group("A1")
    field = _field(field)
    out = []
    for n in range(-(max_vertices // 2), max_vertices // 2 + 1):
        if n == 0:
            continue
        G = stable_a1(W, n)
        if G.n > max_vertices:
            continue
        Z = structure_sheaf(G, label_ring(G, field))
        rep = is_flabby(Z, d_max // 2)
        out.append(CheckResult(f"stable flabby <= {n}a", rep.ok, rep.opens_checked, rep.witness))
        for kind in ("even", "odd"):
            fails = []
            for r in range(r_max + 1):
                if kind == "odd" and r == 0:
                    continue
                s = subgeneric_section(W, kind, n, r, field, G=G)
                if not s.ok:
                    fails.append((r, s.failures))
            out.append(CheckResult(f"{kind} sections <= {n}a", not fails, r_max + 1, fails or None))
    return out


# ---------------------------------------------------------------------------
# stab, adjunction, structure algebra


def stab_comparison(W: AffineWeylGroup, I: IntervalSpec, field: CoefficientField = QQ, d_max: int | None = None,
                    composite: bool = False) -> list[CheckResult]:
    G_par = parabolic_graph_alcoves(W, I)
    G_st = stable_graph(W, I)
    tag = f"[{I.bottom.word_string()}, {I.top.word_string()}]"
    Bp = bmp_construct(G_par, G_par.vertex_of(I.top), d_max=d_max, field=field)
    ring = Bp.ring
    Bs = bmp_construct(G_st, G_st.vertex_of(I.top), d_max=d_max, field=field, ring=ring)
    via = stab_functor(Bp, G_st)
    got = [str(r) for r in via.graded_ranks()]
    want = [str(r) for r in Bs.graded_ranks()]
    risk = Bp.meta["truncation_risk"] or Bs.meta["truncation_risk"]
    out = [
        CheckResult(f"stab ranks {tag}", got == want, G_st.n, None if got == want else (got, want), {"ranks": got}),
        CheckResult(f"no truncation risk {tag}", not risk, G_st.n),
    ]
    if composite:
        comp = stab_composite(W, I, Bp).sheaf
        cr = [str(r) for r in comp.graded_ranks()]
        out.append(CheckResult(f"five-functor composite {tag}", cr == want, G_st.n, None if cr == want else (cr, want)))
    rho = W.rs.rho
    tau = stable_translation_iso(W, I, rho)
    J = translate_interval(W, I, rho)
    G_st2 = tau.target
    B2 = bmp_construct(G_st2, G_st2.vertex_of(J.top), d_max=d_max, field=field, ring=ring)
    pulled = [str(r) for r in pullback(tau, B2).graded_ranks()]
    out.append(CheckResult(f"translation by rho {tag}", pulled == want, G_st.n, None if pulled == want else (pulled, want)))
    return out


def suite_stab_theorem_a1(max_vertices: int = 6, field: CoefficientField = QQ) -> list[CheckResult]:
    W = affine_weyl_group("A1")
    field = _field(field)
    seq = a1_chain(2 * max_vertices + 2)
    out = []
    for i, a in enumerate(seq):
        for b in seq[i:i + max_vertices]:
            I = a1_interval(W, a, b)
            out.extend(stab_comparison(W, I, field, composite=(a == 0 and abs(b) <= 1)))
    return out


def suite_stab_theorem(type_: str, A, B, offsets: Iterable[int] = (0, 1), m_max: int = 4,
                       field: CoefficientField = QQ, composite: bool = False) -> list[CheckResult]:
    """Compare at ``m0 + offset`` for the certified stabilization offset ``m0`` of ``[A, B]``."""
    W = affine_weyl_group(type_)
    field = _field(field)
    m0 = find_m0(W, A, B, m_max).m0
    out = []
    rho = W.rs.rho
    for off in offsets:
        m = m0 + off
        I = translate_interval(W, IntervalSpec(A, B), vscale(m, rho))
        out.extend(stab_comparison(W, I, field, composite=composite))
    return out


def suite_stabilization(type_: str, A, B, m_max: int = 4) -> list[CheckResult]:
    W = affine_weyl_group(type_)
    try:
        rep = find_m0(W, A, B, m_max)
    except NotFound as exc:
        return [CheckResult("stabilization offset found", False, m_max + 1, str(exc))]
    return [CheckResult("stabilization offset found", True, m_max + 1, None,
                        {"m0": rep.m0, "other_edges": rep.other_counts})]


def adjunction_cases(field: CoefficientField = QQ) -> list:
    """``(name, morphism, sheaf on source, sheaf on target)`` on small A1 graphs."""
    W = affine_weyl_group("A1")
    I = a1_interval(W, 0, -1)
    Gp = parabolic_graph_alcoves(W, I)
    Gs = stable_graph(W, I)
    ring = label_ring(Gp, field)
    top_p, top_s = Gp.vertex_of(I.top), Gs.vertex_of(I.top)
    Zp, Zs = structure_sheaf(Gp, ring), structure_sheaf(Gs, ring)
    Bp = bmp_construct(Gp, top_p, field=field, ring=ring)
    Bs = bmp_construct(Gs, top_s, field=field, ring=ring)
    pt = point_graph(W)
    Zpt = structure_sheaf(pt, ring)
    g = inclusion_g(Gs, Gp)
    return [
        ("identity, structure sheaves", identity_morphism(Gp), Zp, Zp),
        ("to a point, stable structure sheaf", map_to_point(Gs), Zs, Zpt),
        ("to a point, parabolic canonical sheaf", map_to_point(Gp), Bp, Zpt),
        ("stable inclusion, canonical sheaves", g, Bs, Bp),
        ("stable inclusion, structure sheaves", g, Zs, Zp),
        ("stable inclusion, mixed", g, Bs, Zp),
    ]


def suite_adjunction(d_max: int = 10, field: CoefficientField = QQ) -> list[CheckResult]:
    out = []
    for name, f, F, H in adjunction_cases(_field(field)):
        rep = adjunction_check(f, F, H, d_max, name)
        out.append(CheckResult(f"adjunction: {name}", rep.ok, d_max // 2 + 1, None if rep.ok else (rep.left, rep.right),
                               {"dims": rep.left}))
    return out


def suite_structure_algebra(type_: str = "A1", radius: int = 3, d_max: int = 16) -> list[CheckResult]:
    W = affine_weyl_group(type_)
    out = []
    for s in range(W.rank + 1):
        rep = sigma_automorphisms(W, s, radius, d_max)
        out.append(CheckResult(f"automorphisms s{s}", rep.automorphism_right and rep.automorphism_left, len(rep.dims)))
        out.append(CheckResult(f"decomposition (i) s{s}", rep.decomposition_i, len(rep.dims), None, {"dims": rep.dims}))
        out.append(CheckResult(f"decomposition (ii) s{s}", rep.decomposition_ii, len(rep.dims)))
    return out
