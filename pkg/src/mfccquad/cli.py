"""Command-line front end.

    mfccquad integrate --method {fcc|mfcc1|mfcc2|graded} --f EXPR --g EXPR
                       --a REAL --b REAL --k REAL [--N INT] [--M INT]
                       [--Nprime INT] [--s INT] [--q REAL] [--stat-order INT]
                       [--gprime EXPR] [--verbose]
    mfccquad study (--config FILE | --table {1,2,3}) [--output PATH] [--jobs INT]
    mfccquad weights --N INT --k REAL

Exit status: 0 on success, 2 on usage errors (bad flags, bad expressions,
invalid parameters), 3 on numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from typing import List, Optional

from .errors import ExpressionError, InvalidParameterError, InvalidValueError, QuadratureError
from .expr import Expression
from .methods import GradedParams, graded_integrate, method1_integrate, method2_integrate
from .problem import OscProblem
from .study import METHODS, fcc_on_linear, parse_config, table_spec, write_study
from .weights import fcc_weights

EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _fmt(v: float) -> str:
    return format(v, ".17g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfccquad",
        description="Filon-Clenshaw-Curtis quadrature for int_a^b f(x) exp(i k g(x)) dx")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("integrate", help="compute one integral")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--f", required=True, metavar="EXPR", help="amplitude f(x)")
    p.add_argument("--g", required=True, metavar="EXPR", help="oscillator g(x)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--M", type=int, default=None,
                   help="panels (default 16 for mfcc1, 100 for graded)")
    p.add_argument("--Nprime", type=int, default=None, help="default ceil(k*N)")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--stat-order", type=int, default=None)
    p.add_argument("--gprime", default=None, metavar="EXPR",
                   help="exact g'(x); replaces the complex-step derivative")
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("study", help="run a convergence study and write CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", metavar="FILE")
    src.add_argument("--table", type=int, choices=(1, 2, 3))
    p.add_argument("--output", default=None, help="CSV path ('-' for stdout)")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("weights", help="dump the modified moments as CSV")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    return parser


def run_integrate(args) -> int:
    gp = Expression(args.gprime) if args.gprime else None
    prob = OscProblem(Expression(args.f), Expression(args.g), args.a, args.b, args.k, gp)
    diag = None
    if args.method == "fcc":
        value = fcc_on_linear(prob, args.N)
    elif args.method == "mfcc1":
        diag = method1_integrate(prob, args.M or 16, args.N)
    elif args.method == "mfcc2":
        Np = args.Nprime if args.Nprime is not None else math.ceil(args.k * args.N)
        diag = method2_integrate(prob, args.N, Np, args.s)
    else:
        if args.stat_order is None:
            raise InvalidParameterError("--method graded requires --stat-order")
        params = GradedParams(args.stat_order, args.N, args.M or 100, args.q)
        diag = graded_integrate(prob, params)
    if diag is not None:
        value = diag.value
    print(f"{_fmt(value.real)}\t{_fmt(value.imag)}")
    if args.verbose and diag is not None:
        print(f"panels={diag.panels_used} evals={diag.evals} "
              f"lambda_max={diag.lambda_max:.6g} "
              f"fallbacks={','.join(diag.fallbacks) or 'none'}", file=sys.stderr)
    return 0


def run_study(args) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            spec = parse_config(fh.read())
        if args.output:
            spec.output = args.output
    else:
        spec = table_spec(args.table, args.output or "-")
    if spec.output in ("-", ""):
        write_study(spec, sys.stdout, args.jobs)
    else:
        with open(spec.output, "w", encoding="ascii", newline="") as fh:
            write_study(spec, fh, args.jobs)
    return 0


def run_weights(args) -> int:
    w = fcc_weights(args.N, args.k)
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(("n", "re", "im"))
    for n, om in enumerate(w.omega):
        out.writerow((n, _fmt(om.real), _fmt(om.imag)))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"integrate": run_integrate, "study": run_study, "weights": run_weights}
    try:
        return handler[args.command](args)
    except (InvalidParameterError, InvalidValueError, ExpressionError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

if __name__ == "__main__":
    sys.exit(main())
