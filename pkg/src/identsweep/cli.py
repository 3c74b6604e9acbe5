"""identsweep command line.

Exit status: 0 = identity holds / no in-domain failure, 1 = failure found
(re-verified), 2 = usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence, TextIO

from identsweep.dyadic import DyadicCase, compute_terms
from identsweep.exact import DomainError
from identsweep.identities import eval_theorem_perm, make_point, registry_lookup
from identsweep.records import IdentityId
from identsweep.report import jsonl_line
from identsweep.sweep import (
    ConstraintMode,
    OutputFormat,
    SpecError,
    SweepSpec,
    confirmed_failures,
    iter_records,
    run_sweep,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

WORKERS_ENV = "IDENTSWEEP_WORKERS"
IDENTITY_TAGS = [member.value for member in IdentityId]
PROVEN = {tag for tag in IDENTITY_TAGS if tag != IdentityId.CONJECTURE_GEN.value}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep argparse's exit code 2 but a terse message
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise SpecError(f"{WORKERS_ENV}={raw!r} is not an integer") from None
    return value


def _add_bounds(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-max", type=int, help="inclusive upper bound on n")
    parser.add_argument("--k-max", type=int, help="inclusive upper bound on k")
    parser.add_argument("--m-max", type=int, help="inclusive upper bound on m")
    parser.add_argument("--j-max", type=int, help="inclusive upper bound on j (dyadic only)")
    parser.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${WORKERS_ENV} or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="identsweep", description=__doc__.splitlines()[0])
    parser.add_argument("--seed-demo", action="store_true", help="print the worked base-case values and exit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    verify = sub.add_parser("verify", help="evaluate one parameter point")
    verify.add_argument("identity", choices=IDENTITY_TAGS)
    for name in ("k", "m", "n", "i", "j"):
        verify.add_argument(f"--{name}", type=int)
    verify.add_argument(
        "--allow-boundary", action="store_true", help="report points outside the hypotheses instead of rejecting them"
    )

    sweep = sub.add_parser("sweep", help="evaluate every point within bounds")
    sweep.add_argument("identity", choices=IDENTITY_TAGS)
    _add_bounds(sweep)
    sweep.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.SUMMARY.value)
    sweep.add_argument("--out", help="record output file (default: standard output)")
    sweep.add_argument("--include-boundary", action="store_true", help="also probe points missing one hypothesis by one")

    search = sub.add_parser("search", help="stream re-verified counterexamples only")
    search.add_argument("identity", choices=IDENTITY_TAGS)
    _add_bounds(search)
    search.add_argument("--stop-on-first", action="store_true")
    return parser


def _spec_from_args(args: argparse.Namespace, output: OutputFormat, mode: ConstraintMode) -> SweepSpec:
    workers = args.workers if args.workers is not None else _default_workers()
    return SweepSpec(
        IdentityId(args.identity),
        n_max=args.n_max,
        k_max=args.k_max,
        m_max=args.m_max,
        j_max=args.j_max,
        constraint_mode=mode,
        workers=workers,
        output=output,
    )


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    entry = registry_lookup(args.identity)
    params = {name: getattr(args, name) for name in ("k", "m", "n", "i", "j")}
    try:
        point = make_point(entry.identity, params)
        record = entry.evaluate(point)
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    out.write(jsonl_line(record))
    if not record.in_domain:
        violated = ", ".join(entry.violated(point))
        err.write(f"{entry.identity.value} {point}: requires {violated} (hypotheses: {entry.condition})\n")
        if not args.allow_boundary:
            return EXIT_USAGE
    return EXIT_OK if record.holds else EXIT_FAILURE


def cmd_sweep(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    mode = ConstraintMode.INCLUDE_BOUNDARY if args.include_boundary else ConstraintMode.IN_DOMAIN_ONLY
    spec = _spec_from_args(args, OutputFormat(args.format), mode)
    summary_stream = out
    if spec.output is OutputFormat.SUMMARY:
        report = run_sweep(spec)
    elif args.out:
        try:
            sink = open(args.out, "w", encoding="utf-8", newline="")
        except OSError as exc:
            err.write(f"error: cannot write {args.out}: {exc.strerror}\n")
            return EXIT_USAGE
        with sink:
            report = run_sweep(spec, sink)
    else:
        report = run_sweep(spec, out)
        summary_stream = err
    summary_stream.write(json.dumps(report.summary()) + "\n")
    for record in report.failures:
        err.write(f"failure: {record.identity.value} {record.params} residual={record.residual}"
                  f" oracle_agrees={record.oracle_agrees}\n")
    return EXIT_FAILURE if report.failures else EXIT_OK


def cmd_search(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    spec = _spec_from_args(args, OutputFormat.JSONL, ConstraintMode.IN_DOMAIN_ONLY)
    if spec.identity.value in PROVEN:
        err.write(f"note: {spec.identity.value} is a proven identity; any failure indicates an implementation bug\n")
    found = 0
    records = iter_records(spec)
    try:
        for record in confirmed_failures(records):
            out.write(jsonl_line(record))
            out.flush()
            found += 1
            if args.stop_on_first:
                break
    finally:
        records.close()
    err.write(f"{found} counterexample(s) found\n")
    return EXIT_FAILURE if found else EXIT_OK


def seed_demo(out: TextIO) -> int:
    """Print the worked base cases: permutation theorem at k=1, dyadic sums at j=1."""
    status = EXIT_OK
    for m, n in ((2, 3), (3, 5), (5, 9)):
        record = eval_theorem_perm(1, m, n)
        out.write(jsonl_line(record))
        status |= int(not record.holds)
    for k in (1, 2):
        case = DyadicCase(1, k)
        terms = [term.b for term in compute_terms(case)]
        out.write(json.dumps({"identity": "dyadic", "j": 1, "k": k, "a": case.a, "b": terms, "k*a": k * case.a}) + "\n")
        status |= int(sum(terms) != k * case.a)
    return status


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.seed_demo:
        return seed_demo(out)
    if args.command is None:
        parser.print_usage(err)
        return EXIT_USAGE
    handler = {"verify": cmd_verify, "sweep": cmd_sweep, "search": cmd_search}[args.command]
    try:
        return handler(args, out, err)
    except (SpecError, DomainError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
