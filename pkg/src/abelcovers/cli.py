"""Command line front end.

Exit codes: 0 success, 1 verification or oracle failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classifier import TOTALLY_DECOMPOSABLE, ClassificationReport, classify
from .errors import CoverError, OracleFailure
from .hodge import EQUALITY_MODES, STRICT
from .monodromy import datum_from_json, validate
from .reference_cases import REFERENCE_CASES, verify_reference_cases
from .scan import FORMATS, ScanJob, emit, parse_groups, parse_points, row_from_report, run_scan, summarize

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2


def _fail(exc: BaseException) -> int:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
    return EXIT_INVALID


def render_markdown(report: ClassificationReport) -> str:
    d = report.datum
    lines = [
        f"# G = {d.group}, theta = {json.dumps([list(x) for x in d.theta], separators=(',', ':'))}",
        "",
        f"- genus: {d.genus}",
        f"- local orders: {list(d.local_orders)}",
        f"- dim Z: {report.dim_Z}",
        f"- dim S(G): {report.dim_SG}",
        f"- star condition: {'holds' if report.star_holds else 'fails'}",
        f"- factors: {report.factor_multiset.summary() or '(none)'}",
        f"- possible dim S_f: {sorted(report.sf_dims.all)}, feasible {sorted(report.sf_dims.feasible)}",
        f"- verdict: **{report.verdict.value}** ({report.rule})",
        f"- S_f vs S(G): {report.sf_vs_sg.value}",
        "",
        "| character | m |",
        "|---|---|",
    ]
    lines += [f"| {m['char']} | {m['m']} |" for m in report.multiplicities]
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    except OSError as exc:
        return _fail(exc)
    assertions = {TOTALLY_DECOMPOSABLE} if args.assert_totally_decomposable else set()
    try:
        datum = validate(datum_from_json(text))
        report = classify(datum, assertions, mode=args.equality)
    except CoverError as exc:
        return _fail(exc)
    if args.format == "md":
        sys.stdout.write(render_markdown(report))
    else:
        sys.stdout.write(json.dumps(report.to_json(), indent=2) + "\n")
    return EXIT_OK


def cmd_scan(args) -> int:
    try:
        groups = parse_groups(args.groups)
        lo, hi = parse_points(args.points)
        job = ScanJob(
            groups=tuple(groups),
            s_min=lo,
            s_max=hi,
            genus_max=args.genus_max,
            assertions=frozenset({TOTALLY_DECOMPOSABLE} if args.assert_totally_decomposable else ()),
            jobs=args.jobs,
            mode=args.equality,
        )
        rows = run_scan(job)
    except OracleFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (CoverError, ValueError) as exc:
        return _fail(exc)
    summary = summarize(rows)
    Path(args.out).write_bytes(emit(rows, args.format, summary))
    print(" ".join(f"{k}={v}" for k, v in summary.items()), file=sys.stderr)
    return EXIT_OK


def cmd_verify_examples(args) -> int:
    failed = 0
    for name, diff in verify_reference_cases():
        if diff:
            failed += 1
            print(f"FAIL {name}")
            for key, (want, got) in diff.items():
                print(f"  {key}: expected {want!r}, got {got!r}")
        else:
            print(f"PASS {name}")
    print(f"{len(REFERENCE_CASES) - failed}/{len(REFERENCE_CASES)} passed")
    if args.table and not failed:
        rows = [row_from_report(classify(case.datum())) for case in REFERENCE_CASES]
        sys.stdout.write(emit(rows, "md").decode())
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abelcovers",
        description="Classify families of abelian covers of the line as special or not.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify one monodromy datum")
    p.add_argument("--input", required=True, help='datum JSON file ("-" for stdin)')
    p.add_argument("--assert-totally-decomposable", action="store_true")
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--equality", choices=EQUALITY_MODES, default=STRICT,
                   help="whether Sp(2m) counts as SU(m,m) for m >= 2 when comparing factors")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan", help="enumerate and classify all data within bounds")
    p.add_argument("--groups", required=True, help='e.g. "6,2x2x2" or "all:16"')
    p.add_argument("--points", required=True, help="branch point range LO..HI")
    p.add_argument("--genus-max", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--assert-totally-decomposable", action="store_true")
    p.add_argument("--equality", choices=EQUALITY_MODES, default=STRICT)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-paper", help="check the built-in published examples")
    p.add_argument("--table", action="store_true", help="also print the examples as a markdown table")
    p.set_defaults(func=cmd_verify_examples)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
