"""Command-line front end: series dumps, invariant evaluation, and the
identity-verification suites.

Exit codes: 0 success, 1 failed checks, 2 parse/usage errors, 3 membership
failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .cohomology import render_coh
from .fields import FieldSyntaxError, parse_field
from .invariants import InvariantSyntaxError, evaluate, parse_invariant
from .series import build_h, build_x, even_odd_split
from .verify import SUITES, RunConfig, run_suite
from .witt import MembershipError, WittClass, parse_form, witt_canonical

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_MEMBERSHIP = 3


def _series_rows(n: int, prec: int) -> list[tuple[str, list[int]]]:
    x = build_x(n, prec)
    h = build_h(n, prec)
    a, b = even_odd_split(x)
    return [
        ("x", x.coeffs),
        ("h", h.coeffs),
        ("a", a.coeffs),
        ("b", b.coeffs),
    ]


def cmd_series(args) -> int:
    try:
        rows = _series_rows(args.n, args.prec)
    except Exception as exc:  # integrality or domain failure
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps({name: coeffs for name, coeffs in rows}, sort_keys=True))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        for name, coeffs in rows:
            writer.writerow([name] + coeffs)
        print(out.getvalue(), end="")
    else:
        for name, coeffs in rows:
            print(f"{name}: " + ",".join(str(c) for c in coeffs))
    return EXIT_OK


def _render_value(value) -> str:
    if isinstance(value, WittClass):
        return str(value)
    return render_coh(value)


def cmd_eval(args) -> int:
    try:
        field = parse_field(args.field)
        alpha = parse_invariant(args.inv, args.mode)
        form = parse_form(args.form, field)
    except (FieldSyntaxError, InvariantSyntaxError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    q = witt_canonical(form)
    try:
        value = evaluate(alpha, q)
    except MembershipError as exc:
        print(f"membership error: {exc}", file=sys.stderr)
        return EXIT_MEMBERSHIP
    rendered = _render_value(value)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "invariant": args.inv,
                    "form": args.form,
                    "field": args.field,
                    "mode": args.mode,
                    "value": rendered,
                },
                sort_keys=True,
            )
        )
    else:
        print(rendered)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(
            f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}",
            file=sys.stderr,
        )
        return EXIT_PARSE
    cfg = RunConfig(
        field=args.field,
        prec=args.prec,
        n_max=args.n_max,
        d_max=args.d_max,
        samples=args.samples,
        seed=args.seed,
        mode=args.mode,
    )
    report = run_suite(args.suite, cfg)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["suite", "cases_total", "cases_failed", "first_failure"])
        writer.writerow(
            [
                report["suite"],
                report["cases_total"],
                report["cases_failed"],
                json.dumps(report["first_failure"], sort_keys=True),
            ]
        )
        print(out.getvalue(), end="")
    else:
        status = "PASS" if report["cases_failed"] == 0 else "FAIL"
        print(
            f"suite={report['suite']} cases={report['cases_total']} "
            f"failed={report['cases_failed']} {status}"
        )
        if report["first_failure"]:
            ff = report["first_failure"]
            print(f"  first failure: {ff['inputs']}")
            print(f"    expected: {ff['expected']}")
            print(f"    got:      {ff['got']}")
    return EXIT_OK if report["cases_failed"] == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwinv",
        description="Exact divided-power operations and invariants of "
        "quadratic forms over computable field towers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_series = sub.add_parser("series", help="dump the series family at one level")
    p_series.add_argument("--n", type=int, required=True, help="level (>= 1)")
    p_series.add_argument("--prec", type=int, default=8, help="truncation order")
    p_series.add_argument(
        "--format", choices=("text", "json", "csv"), default="text"
    )
    p_series.set_defaults(func=cmd_series)

    p_eval = sub.add_parser("eval", help="evaluate an invariant on a form")
    p_eval.add_argument("--inv", required=True, help="invariant literal, e.g. f[1,2]")
    p_eval.add_argument("--form", required=True, help="form literal, e.g. pf(t1)+H")
    p_eval.add_argument("--field", required=True, help="field descriptor, e.g. R((t1))")
    p_eval.add_argument("--mode", choices=("W", "H"), default="H")
    p_eval.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="run an identity suite")
    p_verify.add_argument("--suite", required=True)
    p_verify.add_argument("--field", default=None)
    p_verify.add_argument("--prec", type=int, default=32)
    p_verify.add_argument("--n-max", dest="n_max", type=int, default=3)
    p_verify.add_argument("--d-max", dest="d_max", type=int, default=6)
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--mode", choices=("W", "H"), default=None)
    p_verify.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_PARSE
    if args.command == "series" and args.n < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
