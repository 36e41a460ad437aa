"""Command-line interface.

Exit codes: 0 = verified / success, 1 = verification failure,
2 = input error (bad expression, word, or file).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import catalog_io, enumerator, setcalc, theorem_audit
from .group_core import GroupError, closure, subgroup_as_group

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2


def _default_threads() -> int:
    return os.cpu_count() or 1


def _print_set(g, label, es):
    print(f"{label}: {{{', '.join(es.words(g))}}}")


def cmd_analyze(args) -> int:
    g = catalog_io.build_group(args.group)
    words = [w for w in args.set.split(",") if w.strip()]
    s = catalog_io.parse_element_set(g, words)
    print(f"group: {g.label} (order {g.order})")
    _print_set(g, "S", s)
    pf = setcalc.is_product_free(g, s)
    print(f"product-free: {pf}")
    lm = setcalc.is_locally_maximal(g, s)
    lm_ext = setcalc.is_locally_maximal_by_extension(g, s)
    print(f"locally maximal (coverage test): {lm}")
    print(f"locally maximal (extension test): {lm_ext}")
    _print_set(g, "T(S)", setcalc.t_set(g, s))
    _print_set(g, "sqrt(S)", setcalc.sqrt_set(g, s))
    _print_set(g, "hat(S)", setcalc.hat_set(g, s))
    cl = closure(g, s)
    sub = subgroup_as_group(g, cl)
    label = catalog_io.recognize_group(sub) or "unrecognized"
    print(f"<S>: order {len(cl)}, isomorphic to {label}")
    if lm:
        report = theorem_audit.audit_set(g, s)
        print("audit:")
        for check in report.checks:
            line = f"  {check.name}: {check.status}"
            if check.witness:
                line += f" ({check.witness})"
            print(line)
        print(f"audit all passed: {report.all_passed}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    g = catalog_io.build_group(args.group)
    enum = enumerator.enumerate_lmpf(g, args.k, workers=args.threads)
    record = enumerator._record_for(g, enum, audit=args.audit, with_orbits=args.up_to_aut)
    report = catalog_io.ScanReport(
        version=catalog_io.TOOL_VERSION, k=args.k, records=[record]
    )
    if args.out:
        catalog_io.write_report(report, args.format, args.out)
    else:
        if args.format == "tsv":
            sys.stdout.write(catalog_io.report_to_tsv(report))
        else:
            sys.stdout.write(catalog_io.report_to_json(report))
    if args.audit and record.audit_ok is False:
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def cmd_verify_table1(args) -> int:
    result = enumerator.verify_table1(workers=args.threads)
    print(f"{'group':<12} {'order':>5} {'count':>5} {'expected':>8}  result")
    for row in result.rows:
        mark = "✓" if row.ok else "✗"
        detail = ""
        if not row.ok:
            bits = []
            if not row.count_ok:
                bits.append("count")
            if not row.match_ok:
                bits.append("match")
            if not row.closure_ok:
                bits.append("closure-label")
            if not row.audit_ok:
                bits.append("audit")
            detail = f"  [{', '.join(bits)}]"
        print(
            f"{row.label:<12} {row.order:>5} {row.count:>5} "
            f"{row.expected_count:>8}  {mark}{detail}"
        )
    print(f"largest group with LMPF size-3 set: {result.largest_order_with_set}")
    if not result.ok:
        bad = next(r.label for r in result.rows if not r.ok)
        print(f"verification FAILED at row {bad}")
        return EXIT_VERIFICATION_FAILED
    print("all rows verified")
    return EXIT_OK


def _parse_orders(text: str) -> range:
    parts = text.split("..")
    if len(parts) == 1:
        lo = hi = int(parts[0])
    elif len(parts) == 2:
        lo, hi = int(parts[0]), int(parts[1])
    else:
        raise catalog_io.ParseError(f"bad order range {text!r}")
    if lo < 1 or hi < lo:
        raise catalog_io.ParseError(f"bad order range {text!r}")
    return range(lo, hi + 1)


def _catalog_exprs(catalog_dir, orders) -> list[catalog_io.GroupExpr]:
    exprs = []
    for path in sorted(Path(catalog_dir).glob("*.tbl")):
        g = catalog_io.load_cayley_file(path)  # may raise; caller maps to exit 2
        if g.order in orders:
            exprs.append(catalog_io.FromFile(str(path)))
    return exprs


def cmd_scan(args) -> int:
    orders = _parse_orders(args.orders)
    exprs: list[catalog_io.GroupExpr] = []
    for n in orders:
        exprs.extend(catalog_io.builtin_exprs_for_order(n))
    catalog_dir = args.catalog or os.environ.get("PFREE_CATALOG_DIR")
    if catalog_dir:
        exprs.extend(_catalog_exprs(catalog_dir, set(orders)))

    def progress(g):
        print(f"scanning {g.label} (order {g.order})", file=sys.stderr)

    report = enumerator.scan(
        exprs,
        args.k,
        audit=args.audit,
        workers=args.threads,
        progress=progress,
        dedupe=True,
    )
    sys.stdout.write(catalog_io.report_to_tsv(report))
    tested_orders = {}
    for rec in report.records:
        tested_orders[rec.order] = tested_orders.get(rec.order, 0) + 1
    print("coverage (tested groups / known iso classes per order):")
    for n in orders:
        known = catalog_io.GROUP_COUNTS.get(n)
        tested = tested_orders.get(n, 0)
        known_txt = str(known) if known is not None else "?"
        print(f"  order {n}: {tested} / {known_txt}")
    total = sum(rec.count for rec in report.records)
    print(f"total LMPF sets of size {args.k} found: {total}")
    if args.out:
        catalog_io.write_report(report, "json", args.out)
    ok = theorem_audit.check_main_theorem(report) if args.k == 3 else True
    print(f"main theorem (all findings in orders <= 24): {ok}")
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfree",
        description="Enumerate and verify locally maximal product-free sets "
        "in finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one set in one group")
    p.add_argument("--group", required=True, help="group expression, e.g. C6, C3xQ8")
    p.add_argument("--set", required=True, help="comma-separated element words")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("enumerate", help="enumerate LMPF k-sets in one group")
    p.add_argument("--group", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--up-to-aut", action="store_true", dest="up_to_aut")
    p.add_argument("--audit", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "tsv"], default="json")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-table1", help="verify the embedded classification")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_verify_table1)

    p = sub.add_parser("scan", help="scan a range of group orders")
    p.add_argument("--orders", required=True, help="range, e.g. 25..37")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--catalog", default=None, help="directory of .tbl cayley files")
    p.add_argument("--audit", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GroupError, catalog_io.ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
