"""Command line: build graphs, compute polynomials and canonical sheaves, run verification suites.

Exit codes: 0 success, 1 a check failed, 2 invalid interval or input,
3 no stabilization offset found, 4 generators near the degree bound.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .fields import CoefficientField, FieldError
from .graphs import (
    GraphError,
    IntervalSpec,
    NotFound,
    alcove_of_lattice_point,
    bruhat_graph,
    classify_edges,
    parabolic_graph_alcoves,
    periodic_graph,
    stable_graph,
)
from .polys import generic_poly, kl_parabolic, kl_regular, poly_table_rows, rows_to_csv, rows_to_json
from .serialize import dumps_dot, dumps_graph, dumps_sheaf, rank_table_csv
from .sheaves.bmp import bmp_construct
from .sheaves.sheaf import TruncationRisk, is_flabby, is_flabby_local, structure_sheaf
from .weyl import AffineWeylGroup, affine_weyl_group, sort_key
from . import suites

EXIT_FAIL, EXIT_INTERVAL, EXIT_M0, EXIT_TRUNCATION = 1, 2, 3, 4

DEFAULTS = {
    "type": "A1",
    "field": "Q",
    "kind": "parabolic",
    "interval": None,
    "j": None,
    "dmax": None,
    "mmax": 6,
    "format": None,
    "out": None,
    "max_length": 6,
    "pair": None,
    "radius": None,
    "m": 2,
    "classes": False,
    "mu": None,
}


class UsageError(Exception):
    def __init__(self, message: str, code: int = EXIT_INTERVAL):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# parsing helpers

_POINT = re.compile(r"^\s*(-?\d*)\s*a\s*$|^\s*0\s*$")


def parse_element(W: AffineWeylGroup, text: str):
    """A reduced word such as ``s1.s0`` or ``e``, or an A1 lattice point such as ``-2a``."""
    m = _POINT.match(text)
    if m:
        if W.rank != 1:
            raise UsageError(f"lattice point {text!r} is only understood in type A1")
        coef = m.group(1)
        h = 0 if coef is None else int(coef) if coef not in ("", "-") else (1 if coef == "" else -1)
        return alcove_of_lattice_point(W, (h,))
    try:
        return W.parse_word(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_interval(W: AffineWeylGroup, text: str | None) -> IntervalSpec:
    if not text:
        raise UsageError("an --interval is required")
    parts = text.split("..")
    if len(parts) == 1:
        return IntervalSpec(W.identity, parse_element(W, parts[0]))
    if len(parts) != 2:
        raise UsageError(f"bad interval {text!r}; use BOTTOM..TOP")
    return IntervalSpec(parse_element(W, parts[0]), parse_element(W, parts[1]))


def parse_pair(W: AffineWeylGroup, text: str | None):
    if not text:
        raise UsageError("a --pair A,B is required")
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != 2:
        raise UsageError(f"bad pair {text!r}; use A,B")
    return parse_element(W, parts[0]), parse_element(W, parts[1])


def parse_j(W: AffineWeylGroup, text: str | None) -> tuple:
    if text is None or text == "":
        return ()
    if text in ("f", "finite", "Sf"):
        return W.finite_indices
    try:
        J = tuple(sorted({int(t) for t in re.split(r"[,\s]+", text.strip()) if t}))
    except ValueError as exc:
        raise UsageError(f"bad --j {text!r}") from exc
    if any(j < 0 or j > W.rank for j in J) or not W.is_finitary(J):
        raise UsageError(f"--j {text!r} is not a finitary set of simple reflections")
    return J


def parse_field(text: str) -> CoefficientField:
    try:
        return CoefficientField.parse(text)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def read_config(path: str | None) -> dict:
    """``key = value`` lines; ``#`` starts a comment; keys mirror the long flag names."""
    if not path:
        return {}
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        k, v = (s.strip() for s in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in DEFAULTS:
            raise UsageError(f"{path}:{n}: unknown key {k!r}")
        out[k] = v
    return out


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    cfg = read_config(getattr(args, "config", None))
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            val = cfg.get(key, default)
            if key in ("dmax", "mmax", "max_length", "radius", "m") and isinstance(val, str):
                try:
                    val = int(val)
                except ValueError as exc:
                    raise UsageError(f"config value for {key} must be an integer") from exc
            if key == "classes" and isinstance(val, str):
                val = val.lower() in ("1", "true", "yes")
            setattr(args, key, val)
    return args


def emit(text: str, out: str | None) -> None:
    """Write to ``out`` atomically, or to stdout."""
    if not out:
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=str(target.parent or Path(".")), prefix=".mg-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# commands


def build_graph(W: AffineWeylGroup, kind: str, I: IntervalSpec, J: tuple = ()):
    try:
        if kind == "regular":
            return bruhat_graph(W, J, I)
        if kind == "parabolic":
            return parabolic_graph_alcoves(W, I)
        if kind == "stable":
            return stable_graph(W, I)
        if kind == "periodic":
            return periodic_graph(W, I)
    except (GraphError, ValueError) as exc:
        raise UsageError(f"invalid interval: {exc}") from exc
    raise UsageError(f"unknown graph kind {kind!r}")


def cmd_graph(args) -> int:
    W = affine_weyl_group(args.type)
    I = parse_interval(W, args.interval)
    G = build_graph(W, args.kind, I, parse_j(W, args.j))
    if args.classes or args.kind in ("parabolic", "stable"):
        G = classify_edges(G)
    fmt = args.format or "json"
    if fmt == "json":
        emit(dumps_graph(G), args.out)
    elif fmt == "dot":
        emit(dumps_dot(G), args.out)
    else:
        raise UsageError(f"graph export supports json or dot, not {fmt}")
    return 0


def _kl_rows(args):
    W = affine_weyl_group(args.type)
    J = parse_j(W, args.j)
    ball = [x for x in sorted(W.ball(args.max_length), key=sort_key) if W.is_min_coset_rep(x, J)]
    pairs = [(x, y) for y in ball for x in ball if W.bruhat_leq(x, y)]
    if J:
        return poly_table_rows(pairs, lambda x, y: kl_parabolic(W, J, x, y))
    return poly_table_rows(pairs, lambda x, y: kl_regular(W, x, y))


def cmd_compute(args) -> int:
    W = affine_weyl_group(args.type)
    fmt = args.format or "csv"
    if args.what == "kl":
        rows = _kl_rows(args)
        emit(rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows), args.out)
        return 0
    if args.what == "generic":
        A, B = parse_pair(W, args.pair)
        try:
            P, m = generic_poly(W, A, B, args.mmax)
        except NotFound as exc:
            raise UsageError(str(exc), EXIT_M0) from exc
        except (GraphError, ValueError) as exc:
            raise UsageError(f"invalid pair: {exc}") from exc
        row = {"A": A.word_string(), "B": B.word_string(), "coefficients": list(P.coefficients),
               "polynomial": str(P), "m": m}
        if fmt == "json":
            emit(json.dumps(row, sort_keys=True) + "\n", args.out)
        else:
            emit(rows_to_csv([(row["A"], row["B"], row["coefficients"])], ("A", "B", "coefficients"))
                 + f"# m={m}\n", args.out)
        return 0
    field = parse_field(args.field)
    I = parse_interval(W, args.interval)
    G = build_graph(W, args.kind, I, parse_j(W, args.j))
    top = G.vertex_of(I.top)
    if args.what == "bmp":
        try:
            F = bmp_construct(G, top, d_max=args.dmax, field=field, strict=True)
        except TruncationRisk as exc:
            sys.stderr.write(f"truncation risk: {exc}\n")
            return EXIT_TRUNCATION
        emit(rank_table_csv(F) if fmt == "csv" else dumps_sheaf(F), args.out)
        return 0
    if args.what == "flabby":
        Z = structure_sheaf(G, field=field)
        D = (args.dmax if args.dmax is not None else 16) // 2
        glob, loc = is_flabby(Z, D), is_flabby_local(Z, D)
        report = {"flabby": glob.ok, "local_criterion": loc.ok, "d_max": 2 * D,
                  "opens_checked": glob.opens_checked, "witness": glob.witness and [list(glob.witness[0]), glob.witness[1]]}
        emit(json.dumps(report, sort_keys=True) + "\n", args.out)
        return 0 if glob.ok and loc.ok else EXIT_FAIL
    raise UsageError(f"unknown computation {args.what!r}")


SUITES = ("orders", "labels", "gkm", "adjunction", "appendix", "fiebig", "stab-theorem", "stabilization",
          "subgeneric", "sections", "algebra")

SUITE_TOPICS = {
    "orders": "lifting, interval and directedness properties of the Bruhat and generic orders",
    "labels": "edge labels under translation by a coweight",
    "gkm": "pairwise independence of labels at each vertex",
    "adjunction": "Hom dimensions for pullback and pushforward",
    "appendix": "rank one stalks on A1 parabolic intervals, step by step",
    "fiebig": "canonical sheaf stalk ranks against Kazhdan-Lusztig polynomials",
    "stab-theorem": "restriction to stable edges preserves canonical sheaves",
    "stabilization": "stabilization offset of translated parabolic intervals",
    "subgeneric": "A1 parabolic intervals: rank one stalks, flabbiness and the step-by-step checks",
    "sections": "A1 stable intervals: flabbiness and the explicit even and odd sections",
    "algebra": "structure algebra automorphisms and invariant decompositions",
}


def run_suite(args) -> list:
    W = affine_weyl_group(args.type)
    field = parse_field(args.field)
    name = args.suite
    if name == "orders":
        return suites.suite_orders(args.type, args.radius or 6)
    if name == "labels":
        I = parse_interval(W, args.interval)
        mu = tuple(int(t) for t in args.mu.split(",")) if args.mu else W.rs.rho
        return suites.suite_labels(args.type, I, mu)
    if name == "gkm":
        return suites.suite_gkm(args.type, parse_interval(W, args.interval), field)
    if name == "adjunction":
        return suites.suite_adjunction(args.dmax if args.dmax is not None else 10, field)
    if name == "appendix":
        return suites.suite_appendix(parse_interval(W, args.interval), args.dmax if args.dmax is not None else 8, field)
    if name == "fiebig":
        return suites.suite_fiebig(args.type, args.max_length, field)
    if name == "stab-theorem":
        if args.interval is None and args.pair is None:
            if W.rank != 1:
                raise UsageError("stab-theorem needs --interval outside type A1")
            return suites.suite_stab_theorem_a1(6, field)
        I = parse_interval(W, args.interval) if args.interval else IntervalSpec(*parse_pair(W, args.pair))
        try:
            return suites.suite_stab_theorem(args.type, I.bottom, I.top, range(args.m), args.mmax, field)
        except NotFound as exc:
            raise UsageError(str(exc), EXIT_M0) from exc
    if name == "stabilization":
        I = parse_interval(W, args.interval) if args.interval else IntervalSpec(*parse_pair(W, args.pair))
        res = suites.suite_stabilization(args.type, I.bottom, I.top, args.mmax)
        if not res[0].ok:
            sys.stdout.write(res[0].line() + "\n")
            raise UsageError(str(res[0].witness), EXIT_M0)
        return res
    if name == "subgeneric":
        return suites.suite_subgeneric(7, args.dmax if args.dmax is not None else 16, field)
    if name == "sections":
        return suites.suite_stable_sections(7, args.dmax if args.dmax is not None else 16, 3, field)
    if name == "algebra":
        return suites.suite_structure_algebra(args.type, args.radius or 3, args.dmax if args.dmax is not None else 16)
    raise UsageError(f"unknown suite {name!r}", EXIT_FAIL)


def _witness_json(w):
    if w is None or isinstance(w, (bool, int, float, str)):
        return w
    if isinstance(w, (list, tuple)):
        return [_witness_json(x) for x in w]
    if isinstance(w, dict):
        return {str(k): _witness_json(v) for k, v in w.items()}
    return str(w)


def cmd_verify(args) -> int:
    results = run_suite(args)
    ok = all(r.ok for r in results)
    if (args.format or "text") == "json":
        body = {
            "suite": args.suite,
            "checks": SUITE_TOPICS[args.suite],
            "ok": ok,
            "results": [{"name": r.name, "ok": r.ok, "cases": r.checked, "witness": _witness_json(r.witness)}
                        for r in results],
        }
        emit(json.dumps(body, indent=1, sort_keys=True) + "\n", args.out)
    else:
        lines = [f"# {args.suite}: {SUITE_TOPICS[args.suite]}"] + [r.line() for r in results]
        lines.append(f"{args.suite}: {'PASS' if ok else 'FAIL'}")
        emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file mirroring the long flags")
    p.add_argument("--type", help="root system type, e.g. A1 or A2 (default A1)")
    p.add_argument("--field", help="Q or F<p> for an odd prime p (default Q)")
    p.add_argument("--kind", choices=("regular", "parabolic", "periodic", "stable"), help="graph construction")
    p.add_argument("--interval", help='BOTTOM..TOP with reduced words ("e..s1.s0") or A1 points ("0..-2a")')
    p.add_argument("--j", help="parabolic subset of simple reflections, e.g. 1,2 or f for the finite ones")
    p.add_argument("--dmax", type=int, help="degree bound in the doubled grading")
    p.add_argument("--mmax", "--m-max", dest="mmax", type=int, help="largest translation offset tried (default 6)")
    p.add_argument("--format", choices=("json", "dot", "csv", "text"), help="output format")
    p.add_argument("--out", help="output file (written atomically); stdout when omitted")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="momentgraphs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="export a moment graph as JSON or DOT")
    _common(g)
    g.add_argument("--classes", action="store_const", const=True, help="classify edges (always on for alcove graphs)")
    g.set_defaults(func=cmd_graph)

    c = sub.add_parser("compute", help="polynomial tables, canonical sheaves, flabbiness")
    c.add_argument("what", choices=("kl", "bmp", "generic", "flabby"))
    _common(c)
    c.add_argument("--max-length", dest="max_length", type=int, help="ball radius for kl tables (default 6)")
    c.add_argument("--pair", help="A,B as words for generic polynomials")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=SUITES)
    _common(v)
    v.add_argument("--radius", type=int, help="ball radius for orders and algebra suites")
    v.add_argument("--max-length", dest="max_length", type=int, help="length gap for the fiebig suite (default 6)")
    v.add_argument("--pair", help="A,B as words, alternative to --interval")
    v.add_argument("--m", type=int, help="number of consecutive offsets from the stabilization offset (default 2)")
    v.add_argument("--mu", help="translation coweight for labels, comma separated (default rho)")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        resolve(args)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
