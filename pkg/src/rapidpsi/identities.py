"""Cross-identity verification suites.

Three suites of runnable checks, each returning CheckResult records:

- identities: closed-form values (the csch^2 sum, Lambert sums against
  Bernoulli ratios and their integral twins, odd/even zeta cross-checks, the
  two printed forms of the pole-pair limit);
- equivalence: the three-way agreement between the main series, its
  partial-fraction rearrangement, and the all-arguments identity, plus
  oracle agreement on a fixed quasi-random grid;
- asymptotic: the large-x residual decay and the coefficient cancellation
  that makes the leading log terms close.

Everything is deterministic: fixed grids, fixed summation orders, no RNG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import planner, series
from .bernoulli import build_bernoulli_table
from .oracles import euler_gamma_reference, psi_oracle, re_psi_one_plus_ik, zeta_direct_oracle
from .params import EvalParams

_TWO_PI = 2.0 * math.pi
_EPS = math.ulp(1.0)
_TABLE = build_bernoulli_table(90)

SUITES = ("identities", "equivalence", "asymptotic", "all")


@dataclass(frozen=True)
class CheckResult:
    """One verified identity: the residual actually measured, the allowance
    it had to stay inside, and the verdict."""

    name: str
    argument: float
    residual: float
    allowance: float
    passed: bool


def _abs_check(name: str, argument: float, residual: float, allowance: float) -> CheckResult:
    return CheckResult(name, argument, residual, allowance, abs(residual) <= allowance)


def _default_params() -> EvalParams:
    return EvalParams(tol=1e-12, k_terms=10, n_terms=200000)


def quasi_random_grid(count: int = 50, lo: float = 0.05, hi: float = 25.0):
    """Golden-ratio low-discrepancy points in (lo, hi), guard bands excluded."""
    phi = 0.6180339887498949
    pts = []
    for i in range(1, count + 1):
        x = lo + ((i * phi) % 1.0) * (hi - lo)
        if abs(x - round(x)) > 1.5e-3 or round(x) < 1:
            pts.append(x)
    return pts


def digamma_partial_fraction_rhs(x: float, params: EvalParams) -> float:
    """psi(x+1) + gamma as the partial-fraction rearrangement: the quartic-gap
    k-sum replaces the log terms of the main series, term-for-term in k."""
    pf, _ = series._partial_fraction_gamma_sum(x)
    pieces = [
        0.5 / x,
        -1.0 / (_TWO_PI * x * x),
        math.pi * series._cotpi(x) * series._inv_expm1(_TWO_PI * x),
        pf,
    ]
    for k in range(1, params.k_terms + 1):
        q = series._inv_expm1(_TWO_PI * k)
        if q == 0.0:
            break
        d = (float(k) * k - x * x) * (float(k) * k + x * x)
        pieces.append(4.0 * k * x * x * q / d)
    return math.fsum(pieces)


# ---------------------------------------------------------------------------
# suites


def run_identities(params: EvalParams | None = None) -> list[CheckResult]:
    p = params or _default_params()
    out = []

    s = series.csch2_sum(p)
    tail = planner.tail_bound("csch2", p.k_terms + 1).bound
    closed = 1.0 / 6.0 - 1.0 / _TWO_PI
    out.append(_abs_check("csch2_closed_form", p.k_terms, s.value + tail - closed, 1e-15))

    lam = series.lambert_sum(1, p)
    out.append(_abs_check("lambert_linear", 1, lam.value - (1.0 / 24.0 - 1.0 / (8.0 * math.pi)), 1e-15))

    for m in (3, 5):
        closed = series._lambert_closed_form(m, _TABLE)
        partial = series.lambert_sum(2 * m - 1, p)
        out.append(_abs_check(f"lambert_closed_form_m{m}", m, partial.value - closed, 1e-14))
        out.append(_abs_check(f"lambert_integral_m{m}", m, series._lambert_integral(m) - closed, 1e-10))

    z3 = series.zeta_odd(1, _TABLE, p)
    out.append(_abs_check("zeta3_vs_direct", 1, z3.value - zeta_direct_oracle(3), 1e-12))

    out.append(_abs_check("zeta_even_basel", 1, series.zeta_even(1, _TABLE) - math.pi**2 / 6.0, 1e-15))
    out.append(
        _abs_check("zeta_even_6_vs_direct", 3, series.zeta_even(3, _TABLE) - zeta_direct_oracle(6), 1e-13)
    )

    # the N->0 limit of the odd-zeta identity, with 2N zeta(2N+1) read as 1
    j0 = float(series._zeta_odd_j_sum(0, _TABLE))
    out.append(
        _abs_check("zeta_limit_n0", 0, 1.0 + _TWO_PI * (s.value + tail) - _TWO_PI * j0, 1e-13)
    )

    # the two printed forms of the pole-pair limit are algebraically equal;
    # check them against each other and against the runtime guard form
    for m in (1, 2, 3):
        a = math.pi / (2.0 * math.sinh(math.pi * m) ** 2)
        b = _TWO_PI * math.exp(_TWO_PI * m) / math.expm1(_TWO_PI * m) ** 2
        out.append(_abs_check(f"pole_pair_limit_forms_m{m}", m, a - b, 16.0 * _EPS * a + 1e-30))
        direct = 1.0 / (2.0 * m * math.expm1(_TWO_PI * m)) - a
        guard = series._guard_pole_pair(m, 0.0)
        out.append(
            _abs_check(f"pole_pair_guard_form_m{m}", m, guard - direct, 16.0 * _EPS * (abs(direct) + a))
        )
    return out


def run_equivalence(params: EvalParams | None = None) -> list[CheckResult]:
    out = []

    # three-way chain: main series minus partial-fraction rearrangement must
    # equal minus the all-arguments constant, term-for-term in k
    for x in (0.3, 1.7, 4.2):
        p = planner.plan(1e-12, x)
        psi = series.psi_ramanujan(x, p)
        g = series.gamma_any_x(x, p)
        rhs = digamma_partial_fraction_rhs(x, p)
        out.append(
            _abs_check(
                "partial_fraction_chain",
                x,
                (psi.value - rhs) + g.value,
                2.0 * (psi.error_estimate + g.error_estimate),
            )
        )

    for x in quasi_random_grid():
        p = planner.plan(1e-12, x)
        psi = series.psi_ramanujan(x, p)
        out.append(
            _abs_check("oracle_equivalence", x, psi.value - psi_oracle(x), psi.error_estimate + 1e-12)
        )

    g_int = series.gamma_at_integer(2, planner.plan(1e-12, 2.0))
    g_any = series.gamma_any_x(2.5, planner.plan(1e-12, 2.5))
    out.append(
        _abs_check(
            "gamma_route_agreement",
            2.5,
            g_int.value - g_any.value,
            g_int.error_estimate + g_any.error_estimate + 1e-14,
        )
    )
    out.append(
        _abs_check("gamma_vs_reference", 0.5,
                   series.gamma_any_x(0.5, planner.plan(1e-12, 0.5)).value - euler_gamma_reference(),
                   1e-11)
    )

    for x in (0.5, 1.5):
        p = planner.plan(1e-12, x)
        r = series.re_psi_complex_ramanujan(x, p)
        out.append(_abs_check("re_psi_vs_oracle", x, r.value - re_psi_one_plus_ik(x), 1e-10))
        g = series.gamma_any_x(x, p)
        pf, pf_err = series._partial_fraction_gamma_sum(x)
        out.append(
            _abs_check(
                "re_psi_gamma_consistency",
                x,
                g.value + r.value - pf,
                g.error_estimate + r.error_estimate + pf_err,
            )
        )
    return out


def run_asymptotic(params: EvalParams | None = None) -> list[CheckResult]:
    p = params or _default_params()
    out = []

    s = series.csch2_sum(p)
    tail = planner.tail_bound("csch2", p.k_terms + 1).bound
    out.append(
        _abs_check("log_coefficient_cancellation", 0,
                   1.0 - math.pi / 3.0 + _TWO_PI * (s.value + tail), 1e-13)
    )

    scaled = {n: (n + 0.5) * abs(series.asymptotic_residual(n + 0.5, p)) for n in (2, 5, 10, 20)}
    out.append(
        CheckResult(
            "residual_no_growth",
            20.5,
            scaled[20] - 2.0 * scaled[2],
            0.0,
            scaled[20] <= 2.0 * scaled[2],
        )
    )

    r10 = abs(series.asymptotic_residual(10.5, p))
    r20 = abs(series.asymptotic_residual(20.5, p))
    ceiling = r10 * (1.05 * 10.5 / 20.5)
    out.append(CheckResult("residual_decay", 20.5, r20 - ceiling, 0.0, r20 <= ceiling))
    return out


def run_suite(name: str, params: EvalParams | None = None) -> list[CheckResult]:
    if name == "identities":
        return run_identities(params)
    if name == "equivalence":
        return run_equivalence(params)
    if name == "asymptotic":
        return run_asymptotic(params)
    if name == "all":
        return run_identities(params) + run_equivalence(params) + run_asymptotic(params)
    raise ValueError(f"unknown suite {name!r}, expected one of {SUITES}")
