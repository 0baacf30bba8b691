"""Command-line frontend: evaluation, identity verification, benchmark.

Every command emits one structured record per result on stdout, one JSON
object per line by default (--format plain for key=value text). Records are
deterministic run-to-run except the elapsed_nanoseconds field.

Exit codes: 0 success, 1 input error, 2 verification failure, 3 tolerance
unattainable.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import time

import numpy as np

from . import identities, planner, series
from .bernoulli import build_bernoulli_table
from .errors import GuardBandError, ToleranceError
from .oracles import OracleConfig, euler_gamma_reference, psi_oracle
from .params import DEFAULT_GUARD_DELTA, EvalParams, ModularPair

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_TOLERANCE = 3

GUARD_DELTA_ENV = "RAPIDPSI_GUARD_DELTA"

_TABLE = build_bernoulli_table(90)


@dataclasses.dataclass(frozen=True)
class Report:
    """One output record; floats are printed with 17 significant digits so the
    serialized form round-trips losslessly."""

    quantity: str
    input: float
    value: float
    abs_error_estimate: float
    k_used: int
    n_used: int
    method: str
    elapsed_nanoseconds: int


def _fmt_num(v) -> str:
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".17g")


def render_report(r: Report, fmt: str) -> str:
    fields = [
        ("quantity", json.dumps(r.quantity)),
        ("input", _fmt_num(r.input)),
        ("value", _fmt_num(r.value)),
        ("abs_error_estimate", _fmt_num(r.abs_error_estimate)),
        ("k_used", str(r.k_used)),
        ("n_used", str(r.n_used)),
        ("method", json.dumps(r.method)),
        ("elapsed_nanoseconds", str(r.elapsed_nanoseconds)),
    ]
    if fmt == "json":
        return "{" + ", ".join(f'"{k}": {v}' for k, v in fields) + "}"
    return " ".join(f"{k}={v.strip(chr(34))}" for k, v in fields)


def _emit(r: Report, fmt: str) -> None:
    print(render_report(r, fmt))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags, which collides with the
    verification-failure code; route all usage errors to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"error: {message}\n")


def _guard_delta_override() -> float | None:
    raw = os.environ.get(GUARD_DELTA_ENV)
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{GUARD_DELTA_ENV}={raw!r} is not a number") from None


def _params_for(x: float, tol: float, terms: int | None) -> EvalParams:
    """Planner-chosen EvalParams, with --terms overriding the outer count and
    the environment optionally overriding guard_delta."""
    if terms is not None:
        p = EvalParams(tol=tol, k_terms=terms, n_terms=planner.MAX_N_TERMS)
    else:
        p = planner.plan(tol, x)
    gd = _guard_delta_override()
    if gd is not None:
        p = dataclasses.replace(p, guard_delta=gd)
    return p


# ---------------------------------------------------------------------------
# commands


def cmd_psi(args) -> int:
    t0 = time.perf_counter_ns()
    if args.method == "classical":
        cfg = OracleConfig(target_tolerance=min(max(args.tol, 1e-15), 1e-13))
        value = psi_oracle(args.x, cfg)
        _emit(
            Report("psi", args.x, value, cfg.target_tolerance, 0, 0, "classical",
                   time.perf_counter_ns() - t0),
            args.format,
        )
        return EXIT_OK
    p = _params_for(args.x, args.tol, args.terms)
    sv = series.psi_ramanujan(args.x, p)
    _emit(
        Report("psi", args.x, sv.value, sv.error_estimate, sv.k_used, sv.n_used,
               "ramanujan", time.perf_counter_ns() - t0),
        args.format,
    )
    return EXIT_OK


def cmd_psi_prime(args) -> int:
    t0 = time.perf_counter_ns()
    p = _params_for(args.x, args.tol, args.terms)
    sv = series.psi_prime_ramanujan(args.x, p)
    _emit(
        Report("psi_prime", args.x, sv.value, sv.error_estimate, sv.k_used, sv.n_used,
               "ramanujan", time.perf_counter_ns() - t0),
        args.format,
    )
    return EXIT_OK


def cmd_gamma(args) -> int:
    if (args.m is None) == (args.x is None):
        return _fail("provide exactly one of --m (integer formula) or --x (any-argument formula)",
                     EXIT_INPUT)
    t0 = time.perf_counter_ns()
    if args.m is not None:
        p = _params_for(float(args.m), args.tol, args.terms)
        g = series.gamma_at_integer(args.m, p)
        _emit(
            Report("gamma", args.m, g.value, g.error_estimate, p.k_terms, 0, g.source,
                   time.perf_counter_ns() - t0),
            args.format,
        )
        return EXIT_OK
    try:
        p = _params_for(args.x, args.tol, args.terms)
        g = series.gamma_any_x(args.x, p)
    except GuardBandError:
        m = round(args.x)
        return _fail(
            f"x={args.x} lies in the guard band around {m} where the log terms "
            f"are singular; try: gamma --m {m}",
            EXIT_INPUT,
        )
    _emit(
        Report("gamma", args.x, g.value, g.error_estimate, p.k_terms, p.n_terms, g.source,
               time.perf_counter_ns() - t0),
        args.format,
    )
    return EXIT_OK


def cmd_zeta_odd(args) -> int:
    if args.n < 1:
        return _fail("--n must be a positive integer (N >= 1)", EXIT_INPUT)
    t0 = time.perf_counter_ns()
    p = EvalParams(tol=args.tol, k_terms=args.terms if args.terms is not None else 10)
    if args.alpha is not None:
        pair = ModularPair.from_alpha(args.alpha)
        sv = series.zeta_odd_general(args.n, pair, _TABLE, p)
        method = "two_parameter"
    else:
        sv = series.zeta_odd(args.n, _TABLE, p)
        method = "single_parameter"
    _emit(
        Report("zeta_odd", args.n, sv.value, sv.error_estimate, sv.k_used, sv.n_used,
               method, time.perf_counter_ns() - t0),
        args.format,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = getattr(args, "suite", "identities")
    failures = []
    for check in identities.run_suite(suite):
        t0 = time.perf_counter_ns()
        _emit(
            Report(f"check:{check.name}", check.argument, check.residual, check.allowance,
                   0, 0, "pass" if check.passed else "fail",
                   time.perf_counter_ns() - t0),
            args.format,
        )
        if not check.passed:
            failures.append(check)
    if failures:
        for check in failures:
            print(
                f"error: check {check.name} at {check.argument} failed: "
                f"residual {check.residual:.3e} exceeds allowance {check.allowance:.3e}",
                file=sys.stderr,
            )
        return EXIT_VERIFY
    return EXIT_OK


def _classical_naive(x: float, tol: float) -> tuple[float, int, bool, float]:
    """The textbook series psi(x+1) = -gamma + sum_n x/(n(n+x)), summed
    ascending until its monotone tail bound x/N meets tol, capped at 1e8
    terms. Returns (value, terms, cap_reached, tail_bound)."""
    cap = 100_000_000
    needed = math.ceil(x / tol)
    n_total = min(needed, cap)
    total = 0.0
    chunk = 1 << 22
    start = 1
    while start <= n_total:
        stop = min(start + chunk - 1, n_total)
        n = np.arange(float(start), float(stop) + 1.0)
        total += float(np.sum(x / (n * (n + x))))
        start = stop + 1
    return total - euler_gamma_reference(), n_total, n_total < needed, x / n_total


def cmd_bench(args) -> int:
    if not args.x > 0:
        return _fail("x must be positive", EXIT_INPUT)
    if series._guard_index(args.x, DEFAULT_GUARD_DELTA):
        return _fail(
            f"x={args.x} lies in a guard band; pick a benchmark point away from integers",
            EXIT_INPUT,
        )
    for tol in args.tol:
        t0 = time.perf_counter_ns()
        p = planner.plan(tol, args.x)
        sv = series.psi_ramanujan(args.x, p)
        _emit(
            Report("psi", args.x, sv.value, sv.error_estimate, sv.k_used, sv.n_used,
                   "ramanujan", time.perf_counter_ns() - t0),
            args.format,
        )
        t0 = time.perf_counter_ns()
        value, terms, capped, tail = _classical_naive(args.x, tol)
        _emit(
            Report("psi", args.x, value, tail + 1e-13, 0, terms,
                   "classical-capped" if capped else "classical",
                   time.perf_counter_ns() - t0),
            args.format,
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(sub, tol_default=1e-12):
    sub.add_argument("--tol", type=float, default=tol_default,
                     help="target absolute error")
    sub.add_argument("--terms", type=int, default=None,
                     help="override the planner's outer term count")
    sub.add_argument("--format", choices=("json", "plain"), default="json",
                     help="output record format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rapidpsi",
        description="Rapidly convergent hyperbolic-series evaluation of the "
                    "digamma function and its corollaries, with verified "
                    "error bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_psi = sub.add_parser("psi", help="psi(x+1) for x > 0")
    p_psi.add_argument("--x", type=float, required=True)
    p_psi.add_argument("--method", choices=("ramanujan", "classical"), default="ramanujan")
    _add_common(p_psi)
    p_psi.set_defaults(func=cmd_psi)

    p_pp = sub.add_parser("psi-prime", help="psi'(x+1) for x > 0 outside guard bands")
    p_pp.add_argument("--x", type=float, required=True)
    _add_common(p_pp)
    p_pp.set_defaults(func=cmd_psi_prime)

    p_g = sub.add_parser("gamma", help="Euler's constant via --m (integer formula) or --x")
    p_g.add_argument("--m", type=int, default=None)
    p_g.add_argument("--x", type=float, default=None)
    _add_common(p_g)
    p_g.set_defaults(func=cmd_gamma)

    p_z = sub.add_parser("zeta-odd", help="zeta(2N+1) for N >= 1")
    p_z.add_argument("--n", type=int, required=True)
    p_z.add_argument("--alpha", type=float, default=None,
                     help="first parameter of the two-parameter form (beta = pi^2/alpha)")
    _add_common(p_z)
    p_z.set_defaults(func=cmd_zeta_odd)

    p_v = sub.add_parser("verify", help="run identity verification suites")
    p_v.add_argument("--suite", choices=identities.SUITES, default="all")
    p_v.add_argument("--format", choices=("json", "plain"), default="json")
    p_v.set_defaults(func=cmd_verify)

    p_i = sub.add_parser("identities", help="shorthand for verify --suite identities")
    p_i.add_argument("--format", choices=("json", "plain"), default="json")
    p_i.set_defaults(func=cmd_verify, suite="identities")

    p_b = sub.add_parser("bench", help="Ramanujan-vs-classical convergence benchmark")
    p_b.add_argument("--x", type=float, required=True)
    p_b.add_argument("--tol", type=float, nargs="+", default=[1e-6, 1e-12])
    p_b.add_argument("--format", choices=("json", "plain"), default="json")
    p_b.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ToleranceError as exc:
        return _fail(str(exc), EXIT_TOLERANCE)
    except GuardBandError as exc:
        message = str(exc)
        if exc.suggestion:
            message += f" (try: {exc.suggestion})"
        return _fail(message, EXIT_INPUT)
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
