"""Command-line front end.

Exit codes: 0 verified, 1 input error, 2 bound violation, 3 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time

from . import kernels
from .bounds import PR_UPPER, analyze, degree_win_table, verify_report
from .errors import (ConditioningError, ConvergenceError, DomainError, InputError,
                     PerronBoundError, SamplingError)
from .generators import DEFAULT_ENUMERATION_CAP
from .graphio import encode_graph6, iter_graph6, parse_edge_list, read_graph
from .tablecheck import as_dict as table_dict
from .tablecheck import format_table_check, table_check
from .spectral import SolverConfig
from .sweep import random_stream, sweep_exhaustive, sweep_graphs

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_SOLVER = 3

COLUMNS = ("vertex", "degree", "LWM lower", "new lower", "x_i", "CG upper")


def _config(args) -> SolverConfig:
    return SolverConfig(residual_tol=args.residual_tol, max_iterations=args.max_iter,
                        verify_slack=args.tol, oracle_fallback=not args.no_fallback)


def _open_input(path):
    if path == "-":
        return sys.stdin
    return open(path, encoding="ascii")


def _detect_format(text: str) -> str:
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        return "edgelist" if s[0].isdigit() else "graph6"
    return "edgelist"


def _load_graph(path, fmt):
    with _open_input(path) as fh:
        text = fh.read()
    if fmt == "auto":
        fmt = _detect_format(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    return read_graph(io.StringIO(text), fmt)


def _g5(v) -> str:
    return f"{v:.5g}"


def render_text(rep, violations) -> str:
    g = rep.graph
    spec = rep.spectral
    out = [f"graph: n={g.n} m={g.edge_count} graph6={encode_graph6(g)}",
           f"rho = {spec.rho:.10g}  ({spec.method}, {spec.iterations} iterations, "
           f"residual {spec.residual:.2e})"]
    if rep.note:
        out.append(rep.note)
    if rep.rows:
        widths = (8, 6, 10, 10, 10, 10)
        out.append("  ".join(c.rjust(w) for c, w in zip(COLUMNS, widths)))
        for r in rep.rows:
            cells = (g.label(r.vertex), str(r.degree), _g5(r.lower_lwm), _g5(r.lower_new),
                     _g5(r.actual), _g5(r.upper_cg))
            out.append("  ".join(c.rjust(w) for c, w in zip(cells, widths)))
    out.append(f"x_max = {_g5(rep.x_max)} <= 1/sqrt(2) = {_g5(PR_UPPER)}")
    notes = []
    if rep.pr_equality:
        notes.append("Papendieck-Recht equality: G is a star and x_max = 1/sqrt(2)")
    for v, flag in enumerate(rep.cg_equality_flags):
        if flag:
            notes.append(f"Cioaba-Gregory equality at vertex {g.label(v)}: "
                         "d = n-1, deleted graph regular, x = x_max")
    if rep.rows:
        table = degree_win_table(rep.column("degree"), rep.column("lower_lwm"),
                                 rep.column("lower_new"))
        parts = [f"d={d}: {row[1]}/{row[0]}" for d, row in sorted(table.items())]
        notes.append("gap bound beats LWM (by degree): " + ", ".join(parts))
    out += [f"  * {s}" for s in notes]
    if violations:
        out.append(f"verification: {len(violations)} violation(s)")
        out += [f"  ! {v}" for v in violations]
    else:
        out.append("verification: all bounds hold")
    return "\n".join(out)


def render_csv(rep) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["vertex", "label", "degree", "rho_deleted", "lower_lwm", "lower_new",
                "actual", "upper_cg", "exact_sq", "winner", "cg_equality"])
    for k, r in enumerate(rep.rows):
        w.writerow([r.vertex, rep.graph.label(r.vertex), r.degree, repr(r.rho_deleted),
                    repr(r.lower_lwm), repr(r.lower_new), repr(r.actual), repr(r.upper_cg),
                    repr(r.exact_sq), rep.winner_per_vertex[k], rep.cg_equality_flags[k]])
    return buf.getvalue().rstrip("\n")


def report_dict(rep, violations) -> dict:
    g = rep.graph
    spec = rep.spectral
    return {
        "graph6": encode_graph6(g),
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "rho": spec.rho,
        "eigenvector": [float(v) for v in spec.eigenvector],
        "method": spec.method,
        "iterations": spec.iterations,
        "residual": spec.residual,
        "x_max": rep.x_max,
        "pr_upper": rep.pr_upper,
        "pr_equality": rep.pr_equality,
        "note": rep.note,
        "rows": [
            {"vertex": r.vertex, "label": g.label(r.vertex), "degree": r.degree,
             "rho_deleted": r.rho_deleted, "lower_lwm": r.lower_lwm,
             "lower_new": r.lower_new, "actual": r.actual, "upper_cg": r.upper_cg,
             "exact_sq": r.exact_sq, "winner": rep.winner_per_vertex[k],
             "cg_equality": rep.cg_equality_flags[k]}
            for k, r in enumerate(rep.rows)
        ],
        "violations": [
            {"graph": v.graph, "vertex": v.vertex, "inequality": v.inequality,
             "magnitude": v.magnitude}
            for v in violations
        ],
    }


def cmd_report(args) -> int:
    cfg = _config(args)
    g = _load_graph(args.path, args.format)
    rep = analyze(g, cfg)
    violations = verify_report(rep, cfg)
    if args.output == "json":
        print(json.dumps(report_dict(rep, violations), indent=2))
    elif args.output == "csv":
        print(render_csv(rep))
    else:
        print(render_text(rep, violations))
    return EXIT_VIOLATION if violations else EXIT_OK


def render_summary(title: str, d: dict) -> str:
    def loc(entry):
        if entry is None:
            return "n/a"
        where = entry["graph"] + (f" v{entry['vertex']}" if entry["vertex"] is not None else "")
        return f"{entry['value']:+.3e} at {where}"

    out = [title,
           f"graphs checked: {d['graphs']}",
           f"violations: {d['violations']}"]
    if d["nonconverged"]:
        out.append(f"non-converged graphs: {d['nonconverged']}")
    out += [f"  ! {s}" for s in d["violation_examples"]]
    out.append("worst slack consumed (lhs - bound; negative = never reached):")
    out += [f"  {k:<12} {loc(v)}" for k, v in d["worst_margin"].items()]
    out.append("tightest observed gaps (x - lower, upper - x, 1/sqrt2 - x_max):")
    out += [f"  {k:<12} {loc(v)}" for k, v in d["tightest_gap"].items()]
    out.append(f"Tao-Vu identity max |exact - x^2|: {d['taovu_max_error']:.3e}")
    out.append(f"lower-bound comparison identity: {d['comparison_mismatches']} mismatches, "
               f"{d['comparison_ties']} ties")
    out.append(f"stars: {d['stars']} (max |x_max - 1/sqrt2| = {d['star_max_deviation']:.2e}); "
               f"non-star min gap to 1/sqrt2: {d['nonstar_min_gap']}")
    out.append(f"Cioaba-Gregory equality vertices: {d['cg_equality_vertices']} "
               f"(max deviation {d['cg_equality_max_deviation']:.2e}); "
               f"strict min gap elsewhere: {d['cg_strict_min_gap']}")
    w = d["winners"]
    out.append(f"better lower bound: gap bound {w['new']}, LWM {w['lwm']}, ties {w['tie']}")
    out.append("gap bound wins by degree (fraction of vertices):")
    for deg, (tot, new, _lwm, _tie) in d["degree_table"].items():
        out.append(f"  degree {deg:>3}: {new / tot:.3f} of {tot}")
    out.append(f"max power iterations: {d['max_power_iterations']}; "
               f"re-solved per graph: {d['resolved_per_graph']}; "
               f"oracle fallbacks: {d['oracle_fallbacks']}")
    return "\n".join(out)


def cmd_verify(args) -> int:
    cfg = _config(args)
    t0 = time.perf_counter()
    if args.exhaustive:
        if args.n is None:
            raise InputError("--exhaustive needs --n")
        title = f"exhaustive sweep: all connected labelled graphs on {args.n} vertices"
        summary = sweep_exhaustive(args.n, cfg, cap=args.cap)
    elif args.random:
        if args.n is None or args.p is None:
            raise InputError("--random needs --n and --p")
        title = (f"random sweep: {args.count} connected G({args.n}, {args.p}) "
                 f"samples, seed {args.seed}")
        summary = sweep_graphs(random_stream(args.n, args.p, args.count, args.seed), cfg)
    else:
        title = f"graph6 stream: {args.graph6}"
        with _open_input(args.graph6) as fh:
            summary = sweep_graphs(iter_graph6(fh), cfg)
    d = summary.as_dict()
    if args.output == "json":
        print(json.dumps(d, indent=2))
    else:
        print(render_summary(title, d))
    print(f"[{kernels.BACKEND} kernels, {time.perf_counter() - t0:.2f} s]", file=sys.stderr)
    if summary.nonconverged:
        return EXIT_SOLVER
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_table_check(args) -> int:
    res = table_check()
    if args.output == "json":
        print(json.dumps(table_dict(res), indent=2))
    else:
        print(format_table_check(res))
    return EXIT_OK if res.passed else EXIT_VIOLATION


def _solver_flags(p):
    p.add_argument("--tol", type=float, default=1e-9,
                   help="allowed inequality violation when verifying (default 1e-9)")
    p.add_argument("--residual-tol", type=float, default=1e-12,
                   help="power-iteration residual tolerance (default 1e-12)")
    p.add_argument("--max-iter", type=int, default=10**6,
                   help="power-iteration cap (default 1e6)")
    p.add_argument("--no-fallback", action="store_true",
                   help="fail instead of falling back to the dense Jacobi oracle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perronbound",
        description="Bounds on principal eigenvector entries of connected graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="per-vertex bounds table for one graph")
    p.add_argument("path", help="input file, or '-' for standard input")
    p.add_argument("--format", choices=("auto", "graph6", "edgelist"), default="auto",
                   help="edgelist: header 'n m' then m lines 'u v' (0-based vertices)")
    p.add_argument("--output", choices=("text", "csv", "json"), default="text")
    _solver_flags(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="bulk verification sweeps")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true",
                      help="every connected labelled graph on --n vertices")
    mode.add_argument("--random", action="store_true",
                      help="--count seeded connected G(n, p) samples")
    mode.add_argument("--graph6", metavar="PATH", help="graph6 stream (file or '-')")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                   help="largest n allowed for --exhaustive (default 7)")
    p.add_argument("--output", choices=("text", "json"), default="text")
    _solver_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paper-check", help="consistency check of the published example table")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_table_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which is reserved for violations here
        return EXIT_INPUT if exc.code == 2 else int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConvergenceError, ConditioningError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (InputError, DomainError, SamplingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PerronBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
