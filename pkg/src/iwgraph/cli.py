"""Command-line front end.

Exit codes: 0 success, 1 mathematical refusal (disconnected graph,
non-conforming fit, size guard), 2 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from typing import Optional, Sequence

from .graph import DisconnectedGraphError, Graph, is_prime, jacobian, spanning_tree_count
from .iwasawa import FitError, example1_assignment, fit_invariants, stickelberger, verify_example1
from .textio import ParseError, format_graph, parse_graph, parse_voltages
from .tower import TowerConsistencyError, TowerSpec, analyze_tower
from .voltage import SizeGuardError, derive, max_vertices_default

log = logging.getLogger("iwgraph")

COMMANDS = ("jacobian", "derive", "tower", "fit", "theta", "verify-example1")
NEEDS_VOLTAGES = {"derive", "tower", "theta"}


class InputError(Exception):
    pass


def _dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="PATH")
    common.add_argument("--voltages", metavar="PATH")
    common.add_argument("--p", type=_prime)
    common.add_argument("--levels", type=_nonneg, default=None, help="top level M")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--exponents", help="comma-separated e_0,e_1,... for 'fit'")
    common.add_argument("--max-vertices", type=_nonneg, default=None)
    common.add_argument("--removed-vertex", type=int, default=1)
    common.add_argument("--seed-example1", nargs=2, type=int, metavar=("N", "P"),
                        help="use K_N with voltage 1 on edge (1,2) instead of files")
    common.add_argument("--n", type=int, help="complete-graph size for verify-example1")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="iwgraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(args):
    """Return (graph, voltage assignment or None, p)."""
    if args.seed_example1:
        n, p = args.seed_example1
        if n < 3 or not is_prime(p):
            raise InputError("--seed-example1 needs N >= 3 and a prime P")
        if args.p is not None and args.p != p:
            raise InputError("--p disagrees with --seed-example1")
        va = example1_assignment(n, p)
        return va.base, va, p
    if not args.graph:
        raise InputError("--graph is required")
    g = parse_graph(_read(args.graph), args.graph)
    if args.command in NEEDS_VOLTAGES or (args.command == "fit" and not args.exponents):
        if not args.voltages:
            raise InputError(f"'{args.command}' needs --voltages")
        if args.p is None:
            raise InputError(f"'{args.command}' needs --p")
        va = parse_voltages(_read(args.voltages), g, args.p, args.voltages)
        return g, va, args.p
    return g, None, args.p


def _cmd_jacobian(args, out) -> int:
    g, _, _ = _load(args)
    J = jacobian(g, args.removed_vertex)
    trees = spanning_tree_count(g)
    fmt = args.format or "text"
    if fmt == "json":
        out.write(_dumps({
            "factors": [str(f) for f in J.factors],
            "rank_of_free_part": J.rank_of_free_part,
            "spanning_trees": str(trees),
        }) + "\n")
    elif fmt == "csv":
        out.write("factor\n" + "".join(f"{f}\n" for f in J.factors))
    else:
        group = " ⊕ ".join(f"Z/{f}" for f in J.factors) or "0"
        out.write(f"J(X) ≅ {group}, spanning trees = {trees}\n")
    return 0


def _cmd_derive(args, out) -> int:
    _, va, p = _load(args)
    m = args.levels if args.levels is not None else 1
    d = derive(va, m, args.max_vertices)
    header = f"level {m} cover, p = {p}; vertex (i, g) is numbered g*{va.base.n} + i"
    out.write(format_graph(d.graph, header))
    return 0


def _tower(args):
    _, va, p = _load(args)
    M = args.levels if args.levels is not None else 3
    t0 = time.perf_counter()
    report = analyze_tower(TowerSpec(va, p, M), args.max_vertices)
    log.info("tower to level %d computed in %.2fs", M, time.perf_counter() - t0)
    return report


def _cmd_tower(args, out) -> int:
    report = _tower(args)
    fmt = args.format or "json"
    if fmt == "csv":
        out.write(report.to_csv())
    elif fmt == "text":
        for rec in report.levels:
            if rec.e_m is None:
                out.write(f"m={rec.m} vertices={rec.vertices} connected={rec.connected}\n")
            else:
                parts = " ".join(str(x) for x in rec.p_part_factors) or "-"
                out.write(f"m={rec.m} vertices={rec.vertices} e_m={rec.e_m} "
                          f"p_rank={rec.p_rank} parts={parts}\n")
    else:
        out.write(_dumps(report.to_json()) + "\n")
    for note in report.notes:
        print(note, file=sys.stderr)
    return 1 if report.truncated_at is not None else 0


def _cmd_fit(args, out) -> int:
    if args.exponents:
        if args.p is None:
            raise InputError("'fit' needs --p")
        try:
            e = [int(x) for x in args.exponents.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"--exponents must be comma-separated integers: {args.exponents!r}") from None
        p = args.p
    else:
        report = _tower(args)
        if report.first_disconnected_level is not None:
            print(f"level {report.first_disconnected_level} is disconnected", file=sys.stderr)
            return 1
        e, p = report.exponents(), report.spec.p
    try:
        fit = fit_invariants(e, p)
    except FitError as exc:
        print(f"{exc}: {json.dumps(exc.diagnostics)}", file=sys.stderr)
        return 1
    fmt = args.format or "json"
    if fmt == "text":
        out.write(f"μ={fit.mu} λ={fit.lam} ν={fit.nu} m0={fit.m0} "
                  f"(verified on {fit.verified_levels} levels)\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        doc = fit.to_json()
        w.writerow(list(doc))
        w.writerow(list(doc.values()))
        out.write(buf.getvalue())
    else:
        out.write(_dumps(fit.to_json()) + "\n")
    return 0


def _cmd_theta(args, out) -> int:
    _, va, _ = _load(args)
    sr = stickelberger(va)
    fmt = args.format or "json"
    if fmt == "text":
        out.write(f"Θ = {sr.theta}\ncontent valuation = {sr.to_json()['content_valuation']}\n"
                  f"verdict = {sr.verdict}\n")
    elif fmt == "csv":
        out.write("exponent,coefficient\n")
        out.write("".join(f"{k},{c}\n" for k, c in sr.theta.terms.items()))
    else:
        out.write(_dumps(sr.to_json()) + "\n")
    return 0


def _cmd_verify(args, out) -> int:
    if args.seed_example1:
        n, p = args.seed_example1
    else:
        n, p = args.n, args.p
    if n is None or p is None:
        raise InputError("verify-example1 needs --n and --p")
    if n < 3:
        raise InputError("--n must be at least 3")
    M = args.levels if args.levels is not None else 3
    res = verify_example1(n, p, M, args.max_vertices)
    if args.format == "json":
        doc = {
            "passed": res.passed,
            "n": n, "p": p, "levels": M,
            "method": res.method,
            "expected": {"mu": res.expected[0], "lambda": res.expected[1]},
            "exponents": list(res.exponents),
            "fit": None if res.fit is None else res.fit.to_json(),
        }
        out.write(_dumps(doc) + "\n")
    else:
        out.write(res.summary() + "\n")
    return 0 if res.passed else 1


HANDLERS = {
    "jacobian": _cmd_jacobian,
    "derive": _cmd_derive,
    "tower": _cmd_tower,
    "fit": _cmd_fit,
    "theta": _cmd_theta,
    "verify-example1": _cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(message)s", stream=sys.stderr)
    if args.max_vertices is None:
        args.max_vertices = max_vertices_default()
    try:
        return HANDLERS[args.command](args, out)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DisconnectedGraphError, SizeGuardError, TowerConsistencyError, FitError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
