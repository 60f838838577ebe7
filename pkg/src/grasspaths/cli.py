"""Command-line front end: ``grasspaths {check,enumerate,pfaffian,fuzz}``.

Exit codes: 0 verified / success, 1 identity violated, 2 input or
precondition error (the error class name is printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .arith import (
    format_rational,
    pfaffian_combinatorial,
    pfaffian_elimination,
)
from .digraph import (
    enumerate_cycle_collections,
    enumerate_flows,
    enumerate_flows_free,
    enumerate_flows_general,
    enumerate_flows_mixed,
    enumerate_simple_paths,
)
from .errors import GrassPathsError, ParseError
from .fuzz import run_fuzz
from .grassmann import pfaffian_via_integral
from .identities import IDENTITIES, IdentityReport, run_check
from .io import GraphDocument, QueryDocument, load_matrix, parse_index_list

FAMILIES = ("cycles", "paths", "flows", "free", "mixed", "general")
PFAFFIAN_METHODS = {
    "combinatorial": pfaffian_combinatorial,
    "elimination": pfaffian_elimination,
    "berezin": pfaffian_via_integral,
}


def _emit(args, text: str, record: dict) -> None:
    if args.format == "record":
        sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _load_inputs(args):
    doc = GraphDocument.load(args.graph)
    g = doc.to_digraph()
    query = QueryDocument.load(args.query, g.n) if args.query else QueryDocument()
    sets = query.to_obj()
    for key in "ABIJ":
        flag = getattr(args, key)
        if flag is not None:
            sets[key] = list(parse_index_list(flag, g.n, key))
    return g, {k: tuple(v) for k, v in sets.items()}


def cmd_check(args) -> int:
    g, sets = _load_inputs(args)
    result = run_check(args.identity, g, literal=args.literal, **sets)
    if isinstance(result, IdentityReport):
        rec = result.as_record()
        lines = [
            f"identity: {result.identity}" + (" (literal)" if result.literal else ""),
            f"lhs: {rec['lhs']}",
            f"lhs_sign: {result.lhs_sign:+d}",
            f"rhs_numerator: {rec['rhs_numerator']}",
            f"rhs_denominator: {rec['rhs_denominator']}",
            f"rhs: {rec['rhs']}",
            f"flow_count: {result.flow_count}",
            f"cycle_collection_count: {result.cycle_collection_count}",
        ]
    else:
        rec = {"identity": "paths-lemma", "integral": format_rational(result.integral),
               "flow_sum": format_rational(result.flow_sum), "equal": result.equal}
        lines = [
            "identity: paths-lemma",
            f"integral: {rec['integral']}",
            f"flow_sum: {rec['flow_sum']}",
        ]
    lines.append("verdict: " + ("equal" if result.equal else "NOT EQUAL"))
    _emit(args, "\n".join(lines) + "\n", rec)
    return 0 if result.equal else 1


def _listing(args, g, sets):
    fam = args.family
    a, b, ii, jj = sets["A"], sets["B"], sets["I"], sets["J"]
    if fam == "cycles":
        return enumerate_cycle_collections(g)
    if fam == "paths":
        if len(a) != 1 or len(b) != 1:
            raise ParseError("--family paths needs exactly one vertex in --A and in --B")
        return enumerate_simple_paths(g, a[0], b[0])
    if fam == "flows":
        return enumerate_flows(g, a, b)
    if fam == "free":
        return enumerate_flows_free(g, a, ii)
    if fam == "mixed":
        return enumerate_flows_mixed(g, a, b, ii)
    return enumerate_flows_general(g, a, b, ii, jj)


def cmd_enumerate(args) -> int:
    g, sets = _load_inputs(args)
    items = _listing(args, g, sets)
    lines, records = [], []
    total = 0
    for item in items:
        if args.family == "paths":
            sign, weight = 1, item.weight
        else:
            sign, weight = item.sign, item.weight
        total += sign * weight
        lines.append(f"{item} sgn={sign:+d} wt={format_rational(weight)}")
        records.append({"item": str(item), "sgn": sign, "wt": format_rational(weight),
                        "running_sum": format_rational(total)})
    lines.append(f"# count={len(items)} sum={format_rational(total)}")
    _emit(args, "\n".join(lines) + "\n",
          {"family": args.family, "items": records, "count": len(items),
           "sum": format_rational(total)})
    return 0


def cmd_pfaffian(args) -> int:
    m = load_matrix(args.matrix)
    methods = list(PFAFFIAN_METHODS) if args.method == "all" else [args.method]
    values = {name: PFAFFIAN_METHODS[name](m) for name in methods}
    distinct = set(values.values())
    agree = len(distinct) == 1
    if args.method == "all":
        text = "".join(f"{k}: {format_rational(v)}\n" for k, v in values.items())
        text += f"pfaffian: {format_rational(values['elimination'])}\n" if agree else "methods DISAGREE\n"
    else:
        text = format_rational(values[args.method]) + "\n"
    _emit(args, text, {"methods": {k: format_rational(v) for k, v in values.items()},
                       "agree": agree})
    return 0 if agree else 1


def cmd_fuzz(args) -> int:
    identities = IDENTITIES if args.identity == "all" else (args.identity,)
    summary = run_fuzz(args.seed, args.count, identities, max_n=args.max_n,
                       max_edges=args.max_edges, bound=args.weight_bound, literal=args.literal)
    _emit(args, summary.render(), summary.as_record())
    return 0 if summary.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grasspaths",
        description="Exact checks of determinant/Pfaffian identities for paths and cycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "record"), default="text")

    def graph_args(p):
        p.add_argument("--graph", required=True, help="graph JSON file")
        p.add_argument("--query", help="JSON file with index sets A, B, I, J")
        for key in "ABIJ":
            p.add_argument(f"--{key}", dest=key, metavar="LIST",
                           help=f"comma-separated 1-based vertices for {key}")

    p = sub.add_parser("check", help="evaluate both sides of one identity")
    graph_args(p)
    p.add_argument("--identity", choices=IDENTITIES, default="lgv")
    p.add_argument("--literal", action="store_true",
                   help="evaluate the identity exactly as printed, without sign/parity fixes")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="list paths, cycle collections or flows")
    graph_args(p)
    p.add_argument("--family", choices=FAMILIES, default="flows")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("pfaffian", help="Pfaffian of a skew matrix file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=("all",) + tuple(PFAFFIAN_METHODS), default="all")
    common(p)
    p.set_defaults(func=cmd_pfaffian)

    p = sub.add_parser("fuzz", help="seeded randomized verification")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-n", dest="max_n", type=int, default=5)
    p.add_argument("--max-edges", dest="max_edges", type=int, default=8)
    p.add_argument("--weight-bound", dest="weight_bound", type=int, default=3,
                   help="numerators in [-k, k] \\ {0}, denominators in [1, k]")
    p.add_argument("--identity", choices=("all",) + IDENTITIES, default="all")
    p.add_argument("--literal", action="store_true")
    common(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GrassPathsError as err:
        name = type(err).__name__
        if args.format == "record":
            sys.stdout.write(json.dumps({"error": name, "message": str(err)}) + "\n")
        else:
            sys.stderr.write(f"error: {name}: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
