"""Command-line front end.

Exit codes: 0 resolved verdict / pass, 1 verification failures,
2 unknown comparison verdict, 3 input error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .config import DEFAULT_CONFIG
from .definability import compare
from .errors import AnalysisError, BudgetExceededError
from .functions import MonotoneFn, format_trace, parse_trace
from .plevels import classify
from .relations import (
    invariance_counterexample,
    parse_relation,
    parse_relation_file,
)
from .suites import run_suite
from .terms import eval_term, parse_term
from .zoo import list_names, make


def _load_function(source: str) -> MonotoneFn:
    if source.startswith("zoo:"):
        return make(source[4:])
    path = Path(source)
    if not path.exists():
        raise AnalysisError(f"no such file: {source}")
    fn = parse_trace(path.read_text())
    if fn.name is None:
        fn = fn.renamed(path.stem)
    return fn


def _config_from(args: argparse.Namespace):
    cfg = DEFAULT_CONFIG
    updates = {}
    if getattr(args, "budget", None) is not None:
        updates["budget"] = args.budget
    if getattr(args, "max_rel_arity", None) is not None:
        updates["max_rel_arity"] = args.max_rel_arity
    if getattr(args, "table_bound", None) is not None:
        updates["table_bound"] = args.table_bound
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_analyze(args: argparse.Namespace) -> int:
    fn = _load_function(args.input)
    report = classify(fn, _config_from(args))
    if args.json:
        _print_json(report.to_json_dict())
        return 0
    d = report.to_json_dict()
    print(f"{d['name']}: arity {d['arity']}, trace size {d['trace_size']}")
    print(f"  cc = {d['cc']}, bcc = {d['bcc']}, level = {tuple(d['plevel'])}")
    print(f"  classes: {', '.join(d['classes']) or '-'}")
    print(f"  degree alias: {d['degree_alias']}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    left = _load_function(args.left)
    right = _load_function(args.right)
    cfg = _config_from(args)
    extra = ()
    if args.relations:
        extra = tuple(parse_relation_file(Path(args.relations).read_text()))
    verdict = compare(
        left, right, cfg, allow_terms=args.allow_terms, extra_relations=extra
    )
    if args.emit_cert:
        Path(args.emit_cert).write_text(
            json.dumps([c.to_json_dict() for c in verdict.evidence], indent=2) + "\n"
        )
    if args.json:
        _print_json(verdict.to_json_dict())
    else:
        wording = {
            "equiparallel": "left and right are equiparallel",
            "left_below_strict": "left is strictly below right",
            "right_below_strict": "right is strictly below left",
            "incomparable": "left and right are incomparable",
            "unknown": "relationship unresolved within bounds",
        }
        print(f"{left.label} vs {right.label}: {wording[verdict.relation]}")
        for cert in verdict.evidence:
            print(f"  [{cert.kind}] {cert.claim()}")
        for note in verdict.notes:
            print(f"  note: {note}")
    return 0 if verdict.relation != "unknown" else 2


def cmd_invariance(args: argparse.Namespace) -> int:
    fn = _load_function(args.input)
    cfg = _config_from(args)
    if args.relation:
        rels = [parse_relation(args.relation)]
    else:
        rels = parse_relation_file(Path(args.relations).read_text())
    rows = []
    for rel in rels:
        witness = invariance_counterexample(fn, rel, cfg)
        rows.append((rel, witness))
    if args.json:
        _print_json(
            [
                {
                    "relation": rel.describe(),
                    "invariant": witness is None,
                    "witness": None
                    if witness is None
                    else {
                        "inputs": [t.text for t in witness.inputs],
                        "output": witness.output.text,
                    },
                }
                for rel, witness in rows
            ]
        )
        return 0
    for rel, witness in rows:
        if witness is None:
            print(f"{fn.label} is invariant under {rel.describe()}")
        else:
            print(f"{fn.label} is NOT invariant under {rel.describe()}")
            for t in witness.inputs:
                print(f"    {t.text}")
            print(f" -> {witness.output.text}")
    return 0


def cmd_term(args: argparse.Namespace) -> int:
    term = parse_term(Path(args.termfile).read_text())
    oracle = _load_function(args.oracle)
    result = eval_term(term, oracle, _config_from(args))
    if args.name:
        result = result.renamed(args.name)
    text = format_trace(result)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return 0


def cmd_zoo(args: argparse.Namespace) -> int:
    if args.zoo_command == "list":
        for line in list_names():
            print(line)
        return 0
    fn = make(args.name)
    text = format_trace(fn)
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(args.suite, _config_from(args))
    if args.json:
        _print_json(
            [
                {"name": r.name, "passed": r.passed, "detail": r.detail}
                for r in results
            ]
        )
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            suffix = f"  ({r.detail})" if r.detail and not r.passed else ""
            print(f"{status}  {r.name}{suffix}")
        failed = sum(1 for r in results if not r.passed)
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parlevel",
        description=(
            "Analyze first-order monotone boolean functions: invariance "
            "levels, class membership, and definability certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, budget=False, table=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if budget:
            p.add_argument("--budget", type=int, help="brute-force state budget")
            p.add_argument(
                "--max-rel-arity", type=int, help="largest relation arity searched"
            )
        if table:
            p.add_argument(
                "--table-bound", type=int, help="max arity for full-table evaluation"
            )

    p = sub.add_parser("analyze", help="classify a function (trace file or zoo:NAME)")
    p.add_argument("input")
    add_common(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("compare", help="compare two functions for definability")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--allow-terms", action="store_true",
                   help="also try term-template certificates")
    p.add_argument("--relations", help="file of extra relations to try")
    p.add_argument("--emit-cert", help="write evidence certificates to PATH")
    add_common(p, budget=True, table=True)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("invariance", help="check invariance under relations")
    p.add_argument("input")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--relation", help="one relation, e.g. 'preseq n=3 A=1,2 B=1,2,3'")
    group.add_argument("--relations", help="file with one relation per line")
    add_common(p, budget=True)
    p.set_defaults(fn=cmd_invariance)

    p = sub.add_parser("term", help="evaluate a term file at an oracle function")
    p.add_argument("termfile")
    p.add_argument("--oracle", required=True, help="trace file or zoo:NAME")
    p.add_argument("--name", help="label for the resulting function")
    p.add_argument("-o", "--output", help="write the resulting trace here")
    add_common(p, table=True)
    p.set_defaults(fn=cmd_term)

    p = sub.add_parser("zoo", help="list named functions or emit a trace file")
    zsub = p.add_subparsers(dest="zoo_command", required=True)
    zp = zsub.add_parser("list", help="print names and parameter ranges")
    zp.set_defaults(fn=cmd_zoo, zoo_command="list")
    zp = zsub.add_parser("emit", help="write the exact trace of a named function")
    zp.add_argument("name")
    zp.add_argument("-o", "--output", help="write to a file instead of stdout")
    zp.set_defaults(fn=cmd_zoo, zoo_command="emit")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "suite",
        nargs="?",
        default="all",
        choices=["all", "plevels", "lemmas", "hierarchies", "terms"],
    )
    add_common(p, budget=True, table=True)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
