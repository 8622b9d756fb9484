"""Command-line front end.

Data goes to stdout (or the --out file), human diagnostics to stderr.  All
JSON output is deterministic for a given flag set: stable ordering and no
timestamps.  Exit codes: 0 success, 2 parse/usage error, 3 order cap,
4 abelian input to a graph command, 5 structural precondition (not AC,
not solvable, not nilpotent), 6 search budget refusal, 7 theorem violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import catalog as catalog_mod
from . import diophantine as dio
from .classify import classify, is_solvable, nilpotent_ac_profile
from .construct import build_group
from .errors import (
    AbelianGroup,
    BoundsTooLarge,
    InvalidParameter,
    InvalidTable,
    InvalidTuple,
    NotACGroup,
    NotNilpotent,
    NotSolvable,
    OrderCapExceeded,
    ParseError,
    TheoremViolation,
)
from .graph import signature_report, verify_clique_formula
from .groups import DEFAULT_ORDER_CAP, nilpotency_class

EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_ABELIAN = 4
EXIT_STRUCTURE = 5
EXIT_BUDGET = 6
EXIT_VIOLATION = 7


def _default_jobs() -> int:
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acgroups",
        description="Finite groups, non-commuting graphs, and AC-group analysis",
    )
    parser.add_argument(
        "--cap", type=int, default=DEFAULT_ORDER_CAP,
        help=f"order cap for group construction (default {DEFAULT_ORDER_CAP})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="order, center, class, AC and solvability")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("graph", help="signature and clique-count formula")
    p.add_argument("spec")
    p.add_argument("--signature", action="store_true", help="signature only")
    p.add_argument("--formula", action="store_true", help="formula check only")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="structure types with witnesses")
    p.add_argument("spec")

    p = sub.add_parser("profile", help="P x A profile of a nilpotent AC-group")
    p.add_argument("spec")

    p = sub.add_parser("catalog", help="dump the analyzed group catalog")
    p.add_argument("--max-order", type=int, default=catalog_mod.DEFAULT_MAX_ORDER)
    p.add_argument("--jobs", type=int, default=_default_jobs())

    p = sub.add_parser("pairs", help="signature-matched pairs in the catalog")
    p.add_argument("--max-order", type=int, default=catalog_mod.DEFAULT_MAX_ORDER)
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=_default_jobs())

    p = sub.add_parser("verify", help="verify the theorems over the catalog")
    p.add_argument("--max-order", type=int, default=catalog_mod.DEFAULT_MAX_ORDER)
    p.add_argument("--jobs", type=int, default=_default_jobs())

    p = sub.add_parser("search-type3", help="enumerate the Frobenius-partner system")
    p.add_argument("--bounds", help="bounds file (JSON); defaults built in")
    p.add_argument("--out", help="NDJSON output file (default stdout)")
    p.add_argument("--cursor", help="cursor file for resumable runs")
    p.add_argument("--resume", action="store_true", help="resume from the cursor")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--force", action="store_true", help="override the search budget")
    p.add_argument("--max-shards", type=int, default=None,
                   help="stop after this many shards (resume later)")

    p = sub.add_parser("search-type1", help="enumerate the prime-index system")
    p.add_argument("--bounds", help="bounds file (JSON); defaults built in")
    p.add_argument("--out", help="NDJSON output file (default stdout)")

    return parser


def _load_bounds(path: Optional[str], cls):
    if path is None:
        return cls()
    with open(path) as fh:
        return cls.from_json(json.load(fh))


def cmd_analyze(args) -> int:
    g = build_group(args.spec, cap=args.cap)
    cls = nilpotency_class(g)
    report = {
        "group": g.name,
        "order": g.order,
        "center": g.center().order,
        "abelian": g.is_abelian,
        "nilpotency_class": cls,
        "is_ac": None,
        "is_solvable": is_solvable(g),
    }
    if not g.is_abelian:
        from .graph import is_ac

        report["is_ac"] = is_ac(g)
    if args.json:
        print(json.dumps(report))
        return 0
    if g.is_abelian:
        print(f"{g.name}: order {g.order}, abelian")
        return 0
    cls_text = "NotNilpotent" if cls is None else str(cls)
    print(
        f"{g.name}: order {g.order}, center {report['center']}, "
        f"class {cls_text}, AC={report['is_ac']}, solvable={report['is_solvable']}"
    )
    return 0


def cmd_graph(args) -> int:
    g = build_group(args.spec, cap=args.cap)
    if g.is_abelian:
        print(f"{g.name} is abelian: no non-commuting graph", file=sys.stderr)
        return EXIT_ABELIAN
    want_signature = args.signature or not args.formula
    want_formula = args.formula or not args.signature
    out: dict = {"group": g.name}
    if want_signature:
        out.update(signature_report(g))
    if want_formula:
        rep = verify_clique_formula(g)
        out["parts_count"] = rep.part_count
        out["formula_value"] = rep.formula_value
        out["formula_holds"] = rep.holds
        if rep.mod_p is not None:
            p, residue, ok = rep.mod_p
            out["mod_p"] = {"p": p, "residue": residue, "holds": ok}
    if args.json:
        print(json.dumps(out))
        return 0
    if want_signature:
        print(f"{g.name}: parts {out['parts']} over center {out['center']}")
    if want_formula:
        status = "PASS" if out["formula_holds"] else "FAIL"
        print(
            f"{g.name}: parts = {out['parts_count']}, formula = {out['formula_value']} [{status}]"
        )
        if "mod_p" in out:
            m = out["mod_p"]
            status = "PASS" if m["holds"] else "FAIL"
            print(f"{g.name}: count mod {m['p']} = {m['residue']} [{status}]")
    return 0


def cmd_classify(args) -> int:
    g = build_group(args.spec, cap=args.cap)
    print(json.dumps(classify(g).to_report(g.name)))
    return 0


def cmd_profile(args) -> int:
    g = build_group(args.spec, cap=args.cap)
    print(json.dumps(nilpotent_ac_profile(g).to_report(g.name)))
    return 0


def cmd_catalog(args) -> int:
    cat = catalog_mod.generate_catalog(args.max_order, cap=args.cap, jobs=args.jobs)
    for entry in cat.entries:
        print(json.dumps(entry.to_json()))
    return 0


def cmd_pairs(args) -> int:
    cat = catalog_mod.generate_catalog(args.max_order, cap=args.cap, jobs=args.jobs)
    report = catalog_mod.find_graph_pairs(cat, cap=args.cap)
    for pair in report.pairs:
        if args.json:
            print(json.dumps(pair.to_json()))
        else:
            print(
                f"{pair.g_spec} ~ {pair.h_spec} parts={list(pair.signature)} "
                f"same_order={pair.same_order} verdict={pair.verdict}"
            )
    return 0


def cmd_verify(args) -> int:
    cat = catalog_mod.generate_catalog(args.max_order, cap=args.cap, jobs=args.jobs)
    pairs = catalog_mod.find_graph_pairs(cat, cap=args.cap)
    report = catalog_mod.verify_theorems(cat, pairs, cap=args.cap)
    print(json.dumps(report))
    if not report["passed"]:
        for v in report["violations"]:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_VIOLATION
    print(
        f"verified {report['pairs']} pairs over {report['entries']} entries: OK",
        file=sys.stderr,
    )
    return 0


def cmd_search_type3(args) -> int:
    bounds = _load_bounds(args.bounds, dio.Type3Bounds)
    jobs = max(1, args.jobs)
    shard_sleep = float(os.environ.get("ACGROUPS_SHARD_SLEEP", "0") or 0)
    if args.out is None:
        if args.resume or args.max_shards is not None:
            print("--resume/--max-shards require --out", file=sys.stderr)
            return EXIT_PARSE
        tuples, scanned = dio.enumerate_type3(bounds, force=args.force, jobs=jobs)
        for t in tuples:
            print(json.dumps(t.to_json()))
        print(f"feasible={len(tuples)} scanned={scanned}", file=sys.stderr)
        return 0
    feasible, scanned = dio.run_type3_search(
        bounds,
        out_path=args.out,
        cursor_path=args.cursor,
        resume=args.resume,
        jobs=jobs,
        force=args.force,
        max_shards=args.max_shards,
        shard_sleep=shard_sleep,
    )
    print(f"feasible={feasible} scanned={scanned}")
    return 0


def cmd_search_type1(args) -> int:
    bounds = _load_bounds(args.bounds, dio.Type1Bounds)
    tuples, scanned = dio.enumerate_type1(bounds)
    lines = [json.dumps(t.to_json()) for t in tuples]
    if args.out is None:
        for line in lines:
            print(line)
        print(f"feasible={len(tuples)} scanned={scanned}", file=sys.stderr)
    else:
        with open(args.out, "w") as fh:
            fh.writelines(line + "\n" for line in lines)
        print(f"feasible={len(tuples)} scanned={scanned}")
    return 0


_COMMANDS = {
    "analyze": cmd_analyze,
    "graph": cmd_graph,
    "classify": cmd_classify,
    "profile": cmd_profile,
    "catalog": cmd_catalog,
    "pairs": cmd_pairs,
    "verify": cmd_verify,
    "search-type3": cmd_search_type3,
    "search-type1": cmd_search_type1,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, InvalidParameter, InvalidTable, InvalidTuple) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OrderCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AbelianGroup as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ABELIAN
    except (NotACGroup, NotSolvable, NotNilpotent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    except BoundsTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())
