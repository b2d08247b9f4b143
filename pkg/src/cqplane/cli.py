"""Command-line interface.

Exit codes: 0 success (all checks pass), 1 a check failed, 2 configuration,
parse or modelling error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from . import calculus, contraction, matrices
from .algebra import NcPoly
from .colours import declare
from .parse import ExpressionSyntaxError, UnknownColour, parse_expr, render
from .rewrite import SECTORS, InactiveKind, NoRuleForPair, RewriteSystem, builtin_manifest, load_families
from .suite import (BUILTIN_SUITES, COLOUR_ENV, SuiteDefinition, SuiteError, builtin_suite, exit_code,
                    render_output, run_suite)


def _colours(args):
    return declare(args.colours or os.environ.get(COLOUR_ENV) or "l,m,n")


def _emit(args, poly: NcPoly, extra: Optional[dict] = None):
    if args.format == "json":
        out = {"result": poly.to_json(), "text": poly.text()}
        out.update(extra or {})
        print(json.dumps(out, indent=2))
    else:
        print(render(poly, args.format))


def cmd_normalize(args) -> int:
    cols = _colours(args)
    p = parse_expr(args.expr, cols)
    sys_ = RewriteSystem.sector(args.sector, load_families(args.rules))
    _emit(args, sys_.normalize(p))
    return 0


def cmd_check(args) -> int:
    if args.list:
        for name in sorted(BUILTIN_SUITES):
            print(name)
        return 0
    if args.suite is None:
        raise SuiteError("give a suite file or builtin name")
    if args.suite in BUILTIN_SUITES:
        suite = builtin_suite(args.suite)
    elif Path(args.suite).exists():
        suite = SuiteDefinition.load(args.suite)
    else:
        raise SuiteError(f"no builtin suite or file named {args.suite!r}")
    if args.colours and not suite.colours:
        suite.colours = args.colours
    reports = run_suite(suite, jobs=args.jobs)
    fmt = "json" if args.format == "json" else "text"
    print(render_output(reports, fmt, timing=not args.no_timing))
    return exit_code(reports)


def cmd_matrix(args) -> int:
    cols = _colours(args)
    c = list(cols.values())
    if len(c) < 2:
        raise SuiteError("matrix needs two colours")
    m = matrices.build_matrix(args.name, c[0], c[1])
    if args.format == "json":
        print(json.dumps({"name": args.name, "colours": [c[0].text(), c[1].text()], **m.to_json()}, indent=2))
    elif args.format == "latex":
        print(m.latex())
    else:
        print(m.text())
    return 0


def cmd_d(args) -> int:
    cols = _colours(args)
    p = parse_expr(args.expr, cols)
    if args.colour:
        if args.colour not in cols:
            raise UnknownColour(args.colour)
        out = calculus.apply_d_operator(p, cols[args.colour])
    else:
        out = calculus.apply_d(p)
    _emit(args, out)
    return 0


def cmd_contract(args) -> int:
    cols = list(_colours(args).values())
    c1, c2 = cols[0], cols[1]
    t = contraction.GTransform(1 if args.sign == "+" else -1)
    rel = parse_expr(args.relation, _colours(args)) if args.relation else contraction.plane_relation(c1, c2)
    con = contraction.contract_relation(rel, t)
    hyb = contraction.qh_hybrid_relation(c1, c2, t)
    if args.format == "json":
        print(json.dumps({"sigma": hyb.sign, "contraction": con.to_json(), "hybrid": hyb.to_json()}, indent=2))
    elif args.format == "latex":
        print("% transformed")
        print(con.transformed.latex() + " = 0")
        print("% hybrid")
        print(hyb.lhs.latex() + " = " + hyb.rhs.latex())
        print("% limit q -> 1")
        print(con.limit.latex() + " = 0")
    else:
        print(f"sigma: {hyb.sign:+d}")
        print(f"transformed: {con.transformed.text()} = 0")
        print(f"hybrid: {hyb.lhs.text()} = {hyb.rhs.text()}")
        print(f"limit: {con.limit.text()} = 0")
    return 0


def cmd_rules(args) -> int:
    data = builtin_manifest() if args.rules is None else json.loads(Path(args.rules).read_text())
    if args.format == "json":
        print(json.dumps(data, indent=2))
        return 0
    for f in load_families(data):
        g = f"   [{f.guard_text}]" if f.guard_text else ""
        print(f"{f.name:14} {f.lhs.text()} -> {f.rhs.text()}{g}")
    return 0


def cmd_overlaps(args) -> int:
    cols = list(_colours(args).values())
    sys_ = RewriteSystem.sector(args.sector, load_families(args.rules))
    bad = sys_.overlap_report(cols)
    if args.format == "json":
        print(json.dumps([o.to_json() for o in bad], indent=2))
    else:
        for o in bad:
            print(o.text())
        print(f"{len(bad)} unresolved overlaps")
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--colours", help=f"comma-separated colour names (default ${COLOUR_ENV} or l,m,n)")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")

    ap = argparse.ArgumentParser(prog="cqplane", description="Coloured quantum plane rewriting kernel.",
                                 parents=[common])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--sector", choices=sorted(SECTORS), default="full")
    p.add_argument("--rules", help="rule manifest (JSON) replacing the built-in one")
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("check", parents=[common], help="run a suite file or builtin suite")
    p.add_argument("suite", nargs="?")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--list", action="store_true", help="list builtin suites")
    p.add_argument("--no-timing", action="store_true", help="omit timings (byte-stable output)")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("matrix", parents=[common], help="print R, Rhat, B, C, D, F or P")
    p.add_argument("name", choices=matrices.MATRIX_NAMES)
    p.set_defaults(fn=cmd_matrix)

    p = sub.add_parser("d", parents=[common], help="exterior differential of an expression")
    p.add_argument("expr")
    p.add_argument("--colour", help="use the operator route with this representation colour")
    p.set_defaults(fn=cmd_d)

    p = sub.add_parser("contract", parents=[common], help="g-transform and q -> 1 limit")
    p.add_argument("--sign", choices=("+", "-"), default="+", help="+ for alpha = h/(q-1), - for h/(1-q)")
    p.add_argument("--relation", help="relation polynomial (default: the x-y plane relation)")
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("rules", parents=[common], help="print the rule manifest")
    p.add_argument("--rules")
    p.set_defaults(fn=cmd_rules)

    p = sub.add_parser("overlaps", parents=[common], help="local confluence report for a sector")
    p.add_argument("sector", choices=sorted(SECTORS))
    p.add_argument("--rules")
    p.set_defaults(fn=cmd_overlaps)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ExpressionSyntaxError, UnknownColour, SuiteError, NoRuleForPair, InactiveKind,
            calculus.UnsupportedSector, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
