"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ermakov, numerics, sequences, series, verify
from .errors import DarbouxFibError
from .fibcore import W_CANONICAL, Parity

PRECISION_ENV = "DARBOUX_FIB_PRECISION"


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one number")
    return values


def _range(text: str) -> tuple[float, float]:
    values = _float_list(text)
    if len(values) != 2 or not values[0] < values[1]:
        raise argparse.ArgumentTypeError(f"--range needs 'a,b' with a < b, got {text!r}")
    return values[0], values[1]


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _nonzero(text: str) -> float:
    value = float(text)
    if value == 0:
        raise argparse.ArgumentTypeError("--w-norm must be nonzero")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--w-norm", type=_nonzero, default=W_CANONICAL,
                        help="normalisation of the second deformed solution (default 4*phi_tilde/5)")
    common.add_argument("--x0", type=float, default=0.0,
                        help="lower limit of the Bernoulli quadratures (default 0)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="darboux-fib",
        description="Darboux-deformed continuous Fibonacci functions and Ermakov invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="Darboux shift table")
    p.add_argument("--parity", type=Parity.parse, default=Parity.ODD)
    p.add_argument("--gamma", type=_float_list, default=[2.0, 3.0, 4.0])
    p.add_argument("--count", type=int, default=4)

    p = sub.add_parser("series", parents=[common], help="sampled curve data")
    p.add_argument("--function", choices=series.FUNCTIONS, required=True)
    p.add_argument("--parity", type=Parity.parse, default=Parity.ODD)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--k", type=float, default=-1.0)
    p.add_argument("--range", type=_range, default=(0.0, 8.0))
    p.add_argument("--step", type=_positive, default=0.05)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")

    p = sub.add_parser("invariant", parents=[common], help="Ermakov-Lewis invariant profile")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--n", type=float, default=0.0)
    p.add_argument("--k", type=float, default=-1.0)
    p.add_argument("--parity", type=Parity.parse, default=Parity.ODD)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--deformed", action="store_true")
    p.add_argument("--range", type=_range, default=None,
                   help="x range (default -3,3 plain; 0.2,8 deformed)")
    p.add_argument("--count", type=int, default=201)
    return parser


def _cmd_table(args) -> int:
    if args.count < 1 or args.count > sequences.MAX_TABLE_ROWS:
        raise UsageError(f"--count must lie in [1, {sequences.MAX_TABLE_ROWS}]")
    if any(g <= 0 for g in args.gamma):
        raise UsageError("--gamma values must be positive")
    table = sequences.shift_table(args.parity, args.gamma, args.count, args.w_norm)
    sys.stdout.write(table.to_csv() if args.format == "csv" else json.dumps(table.to_dict()) + "\n")
    return 0


def _cmd_series(args) -> int:
    start, stop = args.range
    data = series.sample(args.function, args.parity, args.gamma, args.k, start, stop, args.step, args.w_norm)
    sys.stdout.write(data.to_csv() if args.format == "csv" else data.to_json() + "\n")
    return 0


def _cmd_verify(args) -> int:
    report = verify.run(args.level, args.w_norm, args.x0)
    sys.stdout.write(report.to_csv() if args.format == "csv" else report.to_json() + "\n")
    return 0 if report.overall else 1


def _cmd_invariant(args) -> int:
    if args.count < 2:
        raise UsageError("--count must be at least 2")
    if args.deformed:
        if args.gamma <= 0:
            raise UsageError("--gamma must be positive")
        inputs = ermakov.deformed_inputs(args.parity, args.gamma, args.k, args.w_norm)
        start, stop = args.range or (0.2, 8.0)
    else:
        inputs = ermakov.sep_inputs(args.k)
        start, stop = args.range or (-3.0, 3.0)
    grid = numerics.Grid.uniform(start, stop, args.count)
    report = ermakov.invariant_profile(inputs, args.m, args.n, grid)
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict()) + "\n")
    else:
        lines = ["x,value,status"]
        lines += [f"{x:.6f},{v:.6f},ok" for x, v in zip(report.grid, report.values)]
        lines += [f"{x:.6f},,singular" for x in report.skipped]
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


COMMANDS = {
    "table": _cmd_table,
    "series": _cmd_series,
    "verify": _cmd_verify,
    "invariant": _cmd_invariant,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    precision = os.environ.get(PRECISION_ENV, "f64")
    if precision != "f64":
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"darboux-fib: error: {PRECISION_ENV}={precision!r}; only 'f64' is supported\n")
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DarbouxFibError, ValueError) as exc:
        sys.stderr.write(f"darboux-fib: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
