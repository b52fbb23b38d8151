"""Command-line entry point: ``mec <command> ...``.

Family specs use ``family:param[:param...]`` with comma-separated lists,
joined by ``+`` for disjoint unions, e.g. ``kpq:3:3``, ``circulant:8:1,3``,
``doublestar:2:3`` or ``complete:3+path:3``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .catalog import (
    figure3_csv, aggregate_figure3, find_collisions, read_jsonl, run_census_stream, totals, verify_table1,
)
from .census import census
from .errors import BudgetExceeded, MecError
from .graph_core import Skeleton, disjoint_union, encode_graph6, make_named, parse_graph6
from .orientations import DEFAULT_BUDGET
from .stars import (
    dagify, decomposition_from_cover, minimum_vertex_covers, theorem3_immorality_number,
)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3

FAMILY_ALIASES = {
    "empty": "empty", "path": "path", "cycle": "cycle", "star": "star",
    "complete": "complete", "k": "complete",
    "kpq": "complete_bipartite", "complete_bipartite": "complete_bipartite",
    "doublestar": "double_star", "double_star": "double_star",
    "circulant": "circulant",
}

FAMILY_HELP = """\
family specs (join with '+' for a disjoint union):
  empty:N  path:N  cycle:N  star:P (K_1,P)  complete:N
  kpq:P:Q (K_P,Q)  doublestar:P:Q (S_2(P,Q))  circulant:P:C1,C2,...
"""


class UsageError(MecError):
    pass


def parse_family(spec: str) -> Skeleton:
    parts = [parse_single_family(tok) for tok in spec.split("+")]
    return parts[0] if len(parts) == 1 else disjoint_union(*parts)


def parse_single_family(spec: str) -> Skeleton:
    name, *fields = spec.strip().split(":")
    family = FAMILY_ALIASES.get(name.lower())
    if family is None:
        raise UsageError(f"unknown family {name!r}")
    try:
        if family == "circulant":
            if len(fields) != 2:
                raise UsageError("circulant needs circulant:P:C1,C2,...")
            return make_named(family, int(fields[0]), [int(c) for c in fields[1].split(",") if c])
        return make_named(family, *(int(f) for f in fields))
    except ValueError as exc:
        if isinstance(exc, MecError):
            raise
        raise UsageError(f"bad family parameters in {spec!r}: {exc}") from exc


def default_budget() -> int:
    env = os.environ.get("MEC_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _graph_from_args(args) -> tuple[Skeleton, str]:
    if args.family:
        g = parse_family(args.family)
        return g, encode_graph6(g)
    if not args.graph:
        raise UsageError("give a graph6 string or --family")
    return parse_graph6(args.graph), args.graph.strip()


def _err(msg: str):
    print(f"mec: {msg}", file=sys.stderr)


def cmd_analyze(args) -> int:
    try:
        g, g6 = _graph_from_args(args)
    except MecError as exc:
        _err(str(exc))
        return EXIT_PARSE
    try:
        rec = census(g, budget=args.budget, graph6=g6)
    except BudgetExceeded as exc:
        _err(str(exc))
        return EXIT_BUDGET
    print(rec.to_json(with_mecs=args.with_mecs))
    return EXIT_OK


def cmd_census(args) -> int:
    src = open(args.input) if args.input != "-" else sys.stdin
    dst = open(args.output, "w") if args.output != "-" else sys.stdout
    all_ok = True
    try:
        for ok, line in run_census_stream(src, workers=args.workers, budget=args.budget,
                                          with_mecs=args.with_mecs):
            all_ok &= ok
            dst.write(line + "\n")
    finally:
        if src is not sys.stdin:
            src.close()
        if dst is not sys.stdout:
            dst.close()
    if not all_ok:
        _err("some lines produced error records")
    return EXIT_OK if all_ok else EXIT_PARSE


def _load_records(path: str) -> list[dict]:
    with (open(path) if path != "-" else sys.stdin) as fh:
        return list(read_jsonl(fh))


def cmd_distinct(args) -> int:
    try:
        records = _load_records(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    errors = [r["graph6"] for r in records if "error" in r]
    if errors:
        _err(f"{len(errors)} error records in input; distinctness not established")
        return EXIT_PARSE
    report = find_collisions(records)
    print(json.dumps(report.to_dict(), separators=(",", ":")))
    if report:
        _err(f"{len(report.groups)} spectrum collision group(s) among {len(records)} records")
        return EXIT_FOUND
    _err(f"all {len(records)} spectra distinct")
    return EXIT_OK


def cmd_stardecomp(args) -> int:
    try:
        g, g6 = _graph_from_args(args)
    except MecError as exc:
        _err(str(exc))
        return EXIT_PARSE
    covers = minimum_vertex_covers(g)
    dec = decomposition_from_cover(g, covers[0])
    t3 = theorem3_immorality_number(g)
    out = {
        "graph6": g6,
        "min_vertex_cover_size": len(covers[0]),
        "minimum_vertex_covers": [list(c.sorted()) for c in covers],
        "cover": list(covers[0].sorted()),
        "decomposition": dec.to_dict(),
        "theorem3": {
            "applicable": t3.applicable,
            "value": t3.value,
            "witness": t3.witness.to_dict() if t3.witness is not None else None,
            "reason": t3.reason,
        },
    }
    try:
        out["dagify"] = [list(a) for a in dagify(dec).arcs()]
    except MecError as exc:
        out["dagify"] = None
        out["dagify_error"] = str(exc)
    print(json.dumps(out, separators=(",", ":")))
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = verify_table1(budget=args.budget)
    for row in rows:
        print(row.line())
    passed = sum(r.passed for r in rows)
    print(f"{passed}/{len(rows)} rows pass")
    return EXIT_OK if passed == len(rows) else EXIT_FOUND


def cmd_figure3(args) -> int:
    try:
        records = _load_records(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    text = figure3_csv(aggregate_figure3(records))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_totals(args) -> int:
    try:
        records = _load_records(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    print(json.dumps(totals(records)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mec",
        description="Markov equivalence class census of DAGs on small skeletons.",
        epilog=FAMILY_HELP + "\nMEC_BUDGET overrides the default orientation budget.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def budget_arg(p):
        p.add_argument("--budget", type=int, default=default_budget(),
                       help="maximum orientations per skeleton (default 2^28 or $MEC_BUDGET)")

    def graph_args(p):
        p.add_argument("graph", nargs="?", help="graph6 string")
        p.add_argument("--family", help="named family spec instead of graph6")

    p = sub.add_parser("analyze", help="census of a single skeleton",
                       epilog=FAMILY_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    graph_args(p)
    budget_arg(p)
    p.add_argument("--with-mecs", action="store_true", help="include per-class fingerprints")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", help="batch census of a graph6 file to JSONL")
    p.add_argument("--in", dest="input", default="-")
    p.add_argument("--out", dest="output", default="-")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--with-mecs", action="store_true")
    budget_arg(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("distinct", help="check census records for equal size spectra")
    p.add_argument("--in", dest="input", default="-")
    p.set_defaults(func=cmd_distinct)

    p = sub.add_parser("stardecomp", help="minimum covers, star decomposition, closed-form m(G)",
                       epilog=FAMILY_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    graph_args(p)
    p.set_defaults(func=cmd_stardecomp)

    p = sub.add_parser("table1", help="verify the seven 10-node spectrum collisions")
    budget_arg(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("figure3", help="MEC share by edge count and log2 class size, as CSV")
    p.add_argument("--in", dest="input", default="-")
    p.add_argument("--out", dest="output", default="-")
    p.set_defaults(func=cmd_figure3)

    p = sub.add_parser("totals", help="total and maximum MEC counts over records")
    p.add_argument("--in", dest="input", default="-")
    p.set_defaults(func=cmd_totals)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
