"""Hyperbolic-series evaluators for psi(x+1) and its corollaries.

One rapidly convergent representation drives everything here: a logarithmic
leading part, two trigonometric-over-hyperbolic terms, two exponentially
convergent k-sums, and an exponentially weighted double series S(x). The
corollaries (Euler's constant at and away from integers, odd zeta values,
trigamma, Lambert-type sums) are rearrangements of the same machinery.

Numerical strategy notes:
- every trig argument is reduced to the signed distance from the nearest
  integer before multiplying by pi, so the k-series stay accurate for large x;
- inside |x - m| < guard_delta the two singular pairings (the cot pole
  against the k=m pole term, and the log|2 sin| singularity against the k=m
  log term) are evaluated from pole-cancelled closed forms that are exact,
  never from a truncated local expansion;
- the inner sine/cosine sums of S(x) are split against the closed forms
  sum sin(n t)/n^2 and sum (1-cos(n t))/n^3, leaving remainders whose terms
  decay like n^-4 and n^-5, so double precision targets need ~10^4 terms
  instead of ~10^11;
- error_estimate fields combine the planner's rigorous tail bounds with a
  rounding allowance proportional to the summed magnitude.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from . import planner
from .bernoulli import BernoulliTable, bernoulli_over_factorial, build_bernoulli_table
from .errors import GuardBandError
from .oracles import OracleConfig, gamma_plus_re_psi, psi_oracle
from .params import (
    GAMMA_SOURCE_ANY_X,
    GAMMA_SOURCE_INTEGER,
    EulerGamma,
    EvalParams,
    ModularPair,
    SeriesValue,
)

_TWO_PI = 2.0 * math.pi
_EPS = math.ulp(1.0)

_TABLE = build_bernoulli_table(90)
# accuracy knobs for the closed-form inner constant gamma + Re psi(1+ik)
_GPRP_CFG = OracleConfig(target_tolerance=1e-14)
_GPRP_ERR = 1e-13


def zeta_even(N: int, table: BernoulliTable) -> float:
    """zeta(2N) = (-1)^{N+1} 2^{2N-1} pi^{2N} B_{2N}/(2N)!; N=0 gives -1/2."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if table.max_index < 2 * N:
        raise ValueError(f"table holds B_0..B_{table.max_index}, need B_{2 * N}")
    ratio = float(bernoulli_over_factorial(table, 2 * N))
    sign = 1.0 if N % 2 == 1 else -1.0
    return sign * ratio * 2.0 ** (2 * N - 1) * math.pi ** (2 * N)


# zeta at even arguments 2j for the coefficient expansions below; j up to 44
_ZETA_EVEN = tuple(zeta_even(j, _TABLE) for j in range(45))


# ---------------------------------------------------------------------------
# argument-reduced trigonometry and overflow-safe hyperbolics


def _dist(x: float) -> float:
    """Signed distance to the nearest integer, in [-0.5, 0.5]."""
    return x - round(x)


def _sinpi(x: float) -> float:
    m = round(x)
    s = math.sin(math.pi * (x - m))
    return s if m % 2 == 0 else -s


def _cotpi(x: float) -> float:
    d = _dist(x)
    if abs(d) == 0.5:
        return 0.0
    return math.cos(math.pi * d) / math.sin(math.pi * d)


def _log_2sinpi_abs(x: float) -> float:
    return math.log(2.0 * abs(math.sin(math.pi * _dist(x))))


def _inv_expm1(t: float) -> float:
    """1/(e^t - 1) for t > 0, underflowing to 0 instead of overflowing."""
    if t > 700.0:
        return 0.0
    q = math.exp(-t)
    return q / (1.0 - q)


def _csch2(t: float) -> float:
    """1/sinh^2(t) for t > 0."""
    if t > 350.0:
        return 0.0
    q = math.exp(-2.0 * t)
    return 4.0 * q / (1.0 - q) ** 2


# ---------------------------------------------------------------------------
# coefficient expansions: Clausen-type sums and the cot pole remainder


def _clausen_sin2(theta: float) -> float:
    """sum_n sin(n theta)/n^2 for 0 < theta <= pi, via the even-zeta
    power series around the theta log theta singularity."""
    r = (theta / _TWO_PI) ** 2
    acc = 0.0
    p = 1.0
    for j in range(1, 45):
        p *= r
        t = _ZETA_EVEN[j] * p / (j * (2 * j + 1))
        acc += t
        if t < 1e-18:
            break
    return theta * (1.0 - math.log(theta)) + theta * acc


def _one_minus_cos_sum3(theta: float) -> float:
    """sum_n (1 - cos(n theta))/n^3 for 0 <= theta <= pi (the antiderivative
    of _clausen_sin2, fixed to vanish at 0)."""
    if theta == 0.0:
        return 0.0
    r = (theta / _TWO_PI) ** 2
    acc = 0.0
    p = 1.0
    for j in range(1, 45):
        p *= r
        t = _ZETA_EVEN[j] * p / (j * (2 * j + 1) * (2 * j + 2))
        acc += t
        if t < 1e-18:
            break
    return theta * theta * ((0.75 - 0.5 * math.log(theta)) + acc)


def _cot_pole_remainder(eps: float) -> float:
    """pi cot(pi eps) - 1/eps = -2 sum_j zeta(2j) eps^{2j-1}, |eps| < 1."""
    if eps == 0.0:
        return 0.0
    acc = 0.0
    p = 1.0 / eps
    e2 = eps * eps
    for j in range(1, 45):
        p *= e2
        t = _ZETA_EVEN[j] * p
        acc += t
        if abs(t) < 1e-18:
            break
    return -2.0 * acc


# ---------------------------------------------------------------------------
# the double series


def _inner_pair(k: int, theta: float, n_sin: int, n_cos: int):
    """(A_k, C_k, err_A, err_C) for signed theta in [-pi, pi], where
    A_k = sum_n sin(n theta)/(k^2+n^2) and C_k = sum_n cos(n theta)/(n(n^2+k^2)).

    Splitting against the closed forms turns the raw 1/n and 1/n^2 decay into
    n^-4 and n^-5 remainder series:
      A_k = Cl(theta) - k^2 sum_n sin(n theta)/(n^2(n^2+k^2)),
      C_k = C_k(0) - I(theta) + k^2 sum_n (1-cos(n theta))/(n^3(n^2+k^2)),
    with Cl = _clausen_sin2, I = _one_minus_cos_sum3 and
    C_k(0) = (gamma + Re psi(1+ik))/k^2.
    """
    k2 = float(k) * float(k)
    c0 = gamma_plus_re_psi(float(k), _GPRP_CFG) / k2
    at = abs(theta)
    if at == 0.0:
        return 0.0, c0, 0.0, _GPRP_ERR / k2
    n = np.arange(1.0, n_sin + 1.0)
    q_sum = float(np.sum(np.sin(n * at) / (n * n * (n * n + k2))))
    n = np.arange(1.0, n_cos + 1.0)
    p_sum = float(np.sum((1.0 - np.cos(n * at)) / (n * n * n * (n * n + k2))))
    a = _clausen_sin2(at) - k2 * q_sum
    if theta < 0.0:
        a = -a
    c = c0 - _one_minus_cos_sum3(at) + k2 * p_sum
    err_a = k2 / (3.0 * float(n_sin) ** 3) + 4.0 * _EPS * (1.1 + k2 * abs(q_sum))
    err_c = (
        k2 / (2.0 * float(n_cos) ** 4)
        + _GPRP_ERR / k2
        + 4.0 * _EPS * (c0 + 1.1 + k2 * p_sum)
    )
    return a, c, err_a, err_c


def double_series_S(x: float, params: EvalParams) -> SeriesValue:
    """2 pi sum_k e^{-2 pi k x} (k^2 A_k - k^3 C_k), the exponentially
    weighted double series; the inner sums see x only through the reduced
    angle theta = 2 pi (x - round(x)), and at integer x they collapse to the
    closed form C_k = (gamma + Re psi(1+ik))/k^2 with A_k = 0."""
    if not x > 0:
        raise ValueError("x must be positive")
    theta = _TWO_PI * _dist(x)
    lengths = planner._inner_lengths(params.tol, x, params.k_terms)
    pieces = []
    trunc = 0.0
    mass = 0.0
    k_used = 0
    n_used = 0
    for k in range(1, params.k_terms + 1):
        t = _TWO_PI * k * x
        w = math.exp(-t) if t < 745.0 else 0.0
        if w == 0.0:
            break
        n_sin, n_cos = lengths[k - 1]
        n_sin = min(n_sin, params.n_terms)
        n_cos = min(n_cos, params.n_terms)
        a, c, err_a, err_c = _inner_pair(k, theta, n_sin, n_cos)
        k2 = float(k) ** 2
        k3 = float(k) ** 3
        pieces.append(w * (k2 * a - k3 * c))
        trunc += w * (k2 * err_a + k3 * err_c)
        mass += w * (k2 * abs(a) + k3 * abs(c))
        k_used = k
        n_used = max(n_used, n_sin, n_cos)
    value = _TWO_PI * math.fsum(pieces)
    err = (
        planner.bound_exp_envelope(k_used + 1, x)
        + _TWO_PI * trunc
        + 4.0 * _EPS * _TWO_PI * mass
    )
    return SeriesValue(value=value, error_estimate=err, k_used=k_used, n_used=n_used)


# ---------------------------------------------------------------------------
# pole-cancelled guard pairs


def _guard_pole_pair(m: int, eps: float) -> float:
    """Combined value of pi cot(pi x)/(e^{2 pi x}-1) and the k=m pole term
    2m/((e^{2 pi m}-1)(m^2-x^2)) at x = m + eps.

    The two simple poles cancel; this closed form never builds either one:
      pair = [ (1 - 2m g phi(eps)) / (2m+eps) + r(eps) ] / (e^{2 pi x}-1)
    with g = e^{2 pi m}/(e^{2 pi m}-1), phi(eps) = expm1(2 pi eps)/eps
    (phi(0) = 2 pi) and r = _cot_pole_remainder. Exact in the limit eps=0.
    """
    inv_e = _inv_expm1(_TWO_PI * (m + eps))
    if inv_e == 0.0:
        return 0.0
    g = 1.0 / -math.expm1(-_TWO_PI * m)
    phi = math.expm1(_TWO_PI * eps) / eps if eps != 0.0 else _TWO_PI
    return inv_e * (
        (1.0 - 2.0 * m * g * phi) / (2.0 * m + eps) + _cot_pole_remainder(eps)
    )


def _guard_log_pair(m: int, eps: float) -> float:
    """Combined value of pi log|2 sin(pi x)| csch^2(pi x)/2 and the k=m log
    term -(pi/2) log|m^4-x^4| csch^2(pi m) at x = m + eps.

    The log|eps| pieces pair against the csch^2 difference, which is computed
    from the product identity csch^2 a - csch^2 b = sinh(b+a) sinh(b-a)
    csch^2 a csch^2 b in exponential form, so nothing cancels catastrophically.
    """
    cm = _csch2(math.pi * m)
    if eps == 0.0:
        return (math.pi / 2.0) * cm * math.log(math.pi / (2.0 * float(m) ** 3))
    x = m + eps
    cx = _csch2(math.pi * x)
    w = math.exp(-math.pi * (m + x)) if math.pi * (m + x) < 745.0 else 0.0
    qx = math.exp(-_TWO_PI * x)
    qm = math.exp(-_TWO_PI * m)
    # sinh(pi(m+x)) csch^2(pi x) csch^2(pi m), overflow-free
    h = 8.0 * w * (1.0 - w * w) / ((1.0 - qx) ** 2 * (1.0 - qm) ** 2)
    delta = -math.sinh(math.pi * eps) * h
    sin_ratio = math.sin(math.pi * eps) / (math.pi * eps)
    return (math.pi / 2.0) * (
        math.log(abs(eps)) * delta
        + (math.log(_TWO_PI) + math.log(sin_ratio)) * cx
        - math.log((2.0 * m + eps) * (m * m + x * x)) * cm
    )


def _guard_index(x: float, guard_delta: float) -> int:
    """The positive integer m with |x-m| < guard_delta, or 0 if none."""
    m = round(x)
    if m >= 1 and abs(x - m) < guard_delta:
        return m
    return 0


# ---------------------------------------------------------------------------
# the main evaluator and its corollaries


def psi_ramanujan(x: float, params: EvalParams) -> SeriesValue:
    """psi(x+1) from the hyperbolic-series representation.

    Within guard_delta of a positive integer m the cot/pole and log/log
    pairings switch to their pole-cancelled closed forms and the k=m terms
    are excluded from the plain sums.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    m = _guard_index(x, params.guard_delta)
    s = double_series_S(x, params)
    pieces = [
        (math.pi / 3.0) * math.log(x),
        0.5 / x,
        -1.0 / (4.0 * math.pi * x * x),
        -s.value,
    ]
    if m == 0:
        pieces.append(math.pi * _cotpi(x) * _inv_expm1(_TWO_PI * x))
        pieces.append(math.pi * _log_2sinpi_abs(x) * _csch2(math.pi * x) / 2.0)
    else:
        eps = x - m
        pieces.append(_guard_pole_pair(m, eps))
        pieces.append(_guard_log_pair(m, eps))
    for k in range(1, params.k_terms + 1):
        if k == m:
            continue
        q = _inv_expm1(_TWO_PI * k)
        if q == 0.0:
            break
        pieces.append(2.0 * k * q / (float(k) * k - x * x))
        pieces.append(
            -(math.pi / 2.0) * planner.log_abs_quartic_gap(float(k), x) * _csch2(math.pi * k)
        )
    mass = math.fsum(abs(p) for p in pieces)
    err = (
        s.error_estimate
        + planner.bound_psi_k_sum(params.k_terms + 1, x, params.guard_delta, skip=m)
        + planner.bound_log_csch2(params.k_terms + 1, x, skip=m)
        + 4.0 * _EPS * mass
    )
    return SeriesValue(
        value=math.fsum(pieces),
        error_estimate=err,
        k_used=params.k_terms,
        n_used=s.n_used,
    )


def gamma_at_integer(m: int, params: EvalParams) -> EulerGamma:
    """Euler's constant from the integer specialization: gamma = H_m - RHS(m),
    where RHS(m) is the series for psi(m+1) with both guard pairs at their
    exact eps=0 limits and the double series in its closed inner form
    2 pi sum_k k e^{-2 pi k m} (gamma + Re psi(1+ik))."""
    if not isinstance(m, int) or m < 1:
        raise ValueError("m must be a positive integer")
    harmonic = math.fsum(1.0 / j for j in range(1, m + 1))
    fm = float(m)
    pieces = [
        (math.pi / 3.0) * math.log(fm),
        0.5 / fm,
        -1.0 / (4.0 * math.pi * fm * fm),
        _guard_pole_pair(m, 0.0),
        _guard_log_pair(m, 0.0),
    ]
    gprp_mass = 0.0
    for k in range(1, params.k_terms + 1):
        if k != m:
            q = _inv_expm1(_TWO_PI * k)
            pieces.append(2.0 * k * q / (float(k) * k - fm * fm))
            pieces.append(
                -(math.pi / 2.0)
                * planner.log_abs_quartic_gap(float(k), fm)
                * _csch2(math.pi * k)
            )
        t = _TWO_PI * k * fm
        w = math.exp(-t) if t < 745.0 else 0.0
        if w > 0.0:
            pieces.append(_TWO_PI * k * w * gamma_plus_re_psi(float(k), _GPRP_CFG))
            gprp_mass += _TWO_PI * k * w
    mass = math.fsum(abs(p) for p in pieces) + abs(harmonic)
    err = (
        planner.bound_psi_k_sum(params.k_terms + 1, fm, params.guard_delta, skip=m)
        + planner.bound_log_csch2(params.k_terms + 1, fm, skip=m)
        + planner.bound_exp_envelope(params.k_terms + 1, fm)
        + gprp_mass * _GPRP_ERR
        + 4.0 * _EPS * mass
    )
    return EulerGamma(
        value=harmonic - math.fsum(pieces),
        source=GAMMA_SOURCE_INTEGER,
        error_estimate=err,
    )


def _partial_fraction_gamma_sum(x: float) -> tuple[float, float]:
    """(value, error) for sum_{n>=1} x^2/(n(n^2+x^2)), by direct summation
    plus an Euler-Maclaurin tail whose integral term is log-exact. Works for
    any x > 0; the remainder heuristic is far below double rounding."""
    n_cut = 2048
    n = np.arange(1.0, n_cut + 1.0)
    partial = float(np.sum(x * x / (n * (n * n + x * x))))
    big_m = n_cut + 1.0
    z = complex(big_m, -x)
    integral = 0.5 * math.log1p((x / big_m) ** 2)
    f0 = 1.0 / big_m - (1.0 / z).real
    f1 = -(1.0 / big_m**2 - (z**-2).real)
    f3 = -6.0 * (1.0 / big_m**4 - (z**-4).real)
    value = partial + integral + f0 / 2.0 - f1 / 12.0 + f3 / 720.0
    return value, 0.01 * big_m**-6 + 4.0 * _EPS * (abs(partial) + 1.0)


def gamma_any_x(x: float, params: EvalParams) -> EulerGamma:
    """Euler's constant from the all-arguments identity: the series
    representation of -gamma evaluated at x, negated. Constant in x up to
    truncation, which the error estimate quantifies."""
    if not x > 0:
        raise ValueError("x must be positive")
    m = _guard_index(x, params.guard_delta)
    if m:
        raise GuardBandError(
            f"x={x} is within guard_delta of {m}; the log terms are singular "
            f"there, use gamma_at_integer(m={m})",
            suggestion=f"gamma_at_integer(m={m})",
        )
    s = double_series_S(x, params)
    x_sum, x_sum_err = _partial_fraction_gamma_sum(x)
    pieces = [
        (math.pi / 3.0) * math.log(x),
        1.0 / (4.0 * math.pi * x * x),
        math.pi * _log_2sinpi_abs(x) * _csch2(math.pi * x) / 2.0,
        -x_sum,
        -s.value,
    ]
    for k in range(1, params.k_terms + 1):
        q = _inv_expm1(_TWO_PI * k)
        csch = _csch2(math.pi * k)
        if q == 0.0 and csch == 0.0:
            break
        pieces.append(2.0 * k * q / (float(k) * k + x * x))
        pieces.append(
            -(math.pi / 2.0) * planner.log_abs_quartic_gap(float(k), x) * csch
        )
    mass = math.fsum(abs(p) for p in pieces)
    err = (
        s.error_estimate
        + x_sum_err
        + 2.0 * planner.bound_lambert(-1, params.k_terms + 1)
        + planner.bound_log_csch2(params.k_terms + 1, x)
        + 4.0 * _EPS * mass
    )
    return EulerGamma(
        value=-math.fsum(pieces), source=GAMMA_SOURCE_ANY_X, error_estimate=err
    )


def re_psi_complex_ramanujan(x: float, params: EvalParams) -> SeriesValue:
    """Re psi(1+ix) by cancelling the partial-fraction sum between the
    all-arguments identity and the classical representation
    Re psi(1+ix) = -gamma + sum_n x^2/(n(n^2+x^2))."""
    if not x > 0:
        raise ValueError("x must be positive")
    m = _guard_index(x, params.guard_delta)
    if m:
        raise GuardBandError(
            f"x={x} is within guard_delta of {m}; use an argument outside the band",
            suggestion="shift x outside the guard band",
        )
    s = double_series_S(x, params)
    pieces = [
        (math.pi / 3.0) * math.log(x),
        1.0 / (4.0 * math.pi * x * x),
        math.pi * _log_2sinpi_abs(x) * _csch2(math.pi * x) / 2.0,
        -s.value,
    ]
    for k in range(1, params.k_terms + 1):
        q = _inv_expm1(_TWO_PI * k)
        csch = _csch2(math.pi * k)
        if q == 0.0 and csch == 0.0:
            break
        pieces.append(2.0 * k * q / (float(k) * k + x * x))
        pieces.append(
            -(math.pi / 2.0) * planner.log_abs_quartic_gap(float(k), x) * csch
        )
    mass = math.fsum(abs(p) for p in pieces)
    err = (
        s.error_estimate
        + 2.0 * planner.bound_lambert(-1, params.k_terms + 1)
        + planner.bound_log_csch2(params.k_terms + 1, x)
        + 4.0 * _EPS * mass
    )
    return SeriesValue(
        value=math.fsum(pieces),
        error_estimate=err,
        k_used=params.k_terms,
        n_used=s.n_used,
    )


def psi_prime_ramanujan(x: float, params: EvalParams) -> SeriesValue:
    """psi'(x+1) from the term-by-term derivative representation. The
    csc^2 pole at integer x is genuine in individual terms; the guard band
    is rejected rather than regularized."""
    if not x > 0:
        raise ValueError("x must be positive")
    m = _guard_index(x, params.guard_delta)
    if m:
        raise GuardBandError(
            f"x={x} is within guard_delta of {m}; the csc^2 pairing is singular "
            f"there, evaluate outside the band",
            suggestion="shift x outside the guard band",
        )
    sp = _sinpi(x)
    pieces = [
        math.pi / (3.0 * x),
        -1.0 / (2.0 * x * x),
        1.0 / (_TWO_PI * x * x * x),
        -math.pi * math.pi / (sp * sp) * _inv_expm1(_TWO_PI * x),
    ]
    for k in range(1, params.k_terms + 1):
        q = _inv_expm1(_TWO_PI * k)
        csch = _csch2(math.pi * k)
        if q == 0.0 and csch == 0.0:
            break
        d = float(k) * k - x * x
        pieces.append(4.0 * k * x * q / (d * d))
        # 2 pi x^3 / (sinh^2(pi k)(k^4 - x^4)) in overflow-free ratio form
        if k > x:
            r = x / k
            pieces.append(_TWO_PI * csch * r**3 / (k * (1.0 - r**4)))
        else:
            r = k / x
            pieces.append(-_TWO_PI * csch / (x * (1.0 - r**4)))
    mass = math.fsum(abs(p) for p in pieces)
    first = params.k_terms + 1
    f2 = max(first, math.ceil(x) + 2)
    tail = 0.0
    for k in range(first, min(f2, 130)):
        gap = max(abs(float(k) * k - x * x), params.guard_delta * (k + x))
        qk = math.exp(-_TWO_PI * k)
        tail += (4.0 * k * x / (gap * gap) + _TWO_PI * x**3 / (gap * (k * k + x * x))) * qk / (1.0 - qk)
    err = (
        tail * (1.0 + 1e-12)
        + (x / f2) * planner.bound_lambert(-1, f2)
        + math.pi * x**3 / float(f2) ** 3 * planner.bound_csch2(f2)
        + 4.0 * _EPS * mass
    )
    return SeriesValue(
        value=math.fsum(pieces), error_estimate=err, k_used=params.k_terms, n_used=0
    )


# ---------------------------------------------------------------------------
# Lambert-type sums and zeta corollaries


def lambert_sum(power: int, params: EvalParams) -> SeriesValue:
    """sum_k k^power/(e^{2 pi k}-1) over k <= k_terms, with the geometric
    tail bound scaled by the polynomial factor."""
    pieces = []
    for k in range(1, params.k_terms + 1):
        q = _inv_expm1(_TWO_PI * k)
        if q == 0.0:
            break
        pieces.append(float(k) ** power * q)
    mass = math.fsum(abs(p) for p in pieces)
    err = planner.bound_lambert(power, params.k_terms + 1) + 4.0 * _EPS * mass
    return SeriesValue(
        value=math.fsum(pieces), error_estimate=err, k_used=params.k_terms, n_used=0
    )


def csch2_sum(params: EvalParams) -> SeriesValue:
    """sum_k 1/sinh^2(pi k) over k <= k_terms; equals 1/6 - 1/(2 pi) in the
    limit."""
    pieces = []
    for k in range(1, params.k_terms + 1):
        c = _csch2(math.pi * k)
        if c == 0.0:
            break
        pieces.append(c)
    mass = math.fsum(pieces)
    err = planner.bound_csch2(params.k_terms + 1) + 4.0 * _EPS * mass
    return SeriesValue(
        value=math.fsum(pieces), error_estimate=err, k_used=params.k_terms, n_used=0
    )


def _zeta_odd_j_sum(N: int, table: BernoulliTable) -> Fraction:
    """sum_{j=0}^{N+1} (-1)^{j+1} (2j-1) B_{2j}/(2j)! B_{2N+2-2j}/(2N+2-2j)!,
    in exact rational arithmetic (the alternating sum cancels badly in
    floating point once N grows)."""
    total = Fraction(0)
    for j in range(N + 2):
        sign = -1 if j % 2 == 0 else 1
        total += (
            sign
            * (2 * j - 1)
            * bernoulli_over_factorial(table, 2 * j)
            * bernoulli_over_factorial(table, 2 * N + 2 - 2 * j)
        )
    return total


def _power_csch2_sum(power: int, scale: float, k_terms: int) -> tuple[float, float]:
    """(value, tail bound) for sum_k k^power/sinh^2(scale * k), power <= 0."""
    pieces = []
    for k in range(1, k_terms + 1):
        c = _csch2(scale * k)
        if c == 0.0:
            break
        pieces.append(float(k) ** power * c)
    return math.fsum(pieces), planner.bound_csch2_power_scaled(power, k_terms + 1, scale)


def _power_lambert_sum(power: int, scale: float, k_terms: int) -> tuple[float, float]:
    """(value, tail bound) for sum_k k^power/(e^{2 scale k}-1), power <= 0."""
    pieces = []
    for k in range(1, k_terms + 1):
        q = _inv_expm1(2.0 * scale * k)
        if q == 0.0:
            break
        pieces.append(float(k) ** power * q)
    return math.fsum(pieces), planner.bound_lambert_scaled(power, k_terms + 1, scale)


def zeta_odd(N: int, table: BernoulliTable, params: EvalParams) -> SeriesValue:
    """zeta(2N+1) solved from the even-index Bernoulli convolution identity:
    2N zeta(2N+1) = (2 pi)^{2N+1} J - 4N sum_k k^{-2N-1}/(e^{2 pi k}-1)
    - (1+(-1)^N) pi sum_k k^{-2N}/sinh^2(pi k), with J the exact-rational
    j-sum converted to floating point once."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    if table.max_index < 2 * N + 2:
        raise ValueError(f"table holds B_0..B_{table.max_index}, need B_{2 * N + 2}")
    j_part = (_TWO_PI) ** (2 * N + 1) * float(_zeta_odd_j_sum(N, table))
    lam, lam_tail = _power_lambert_sum(-2 * N - 1, math.pi, params.k_terms)
    value = j_part - 4.0 * N * lam
    err = 4.0 * N * lam_tail + 2.0 * _EPS * abs(j_part)
    if N % 2 == 0:
        hyp, hyp_tail = _power_csch2_sum(-2 * N, math.pi, params.k_terms)
        value -= 2.0 * math.pi * hyp
        err += 2.0 * math.pi * hyp_tail
    return SeriesValue(
        value=value / (2.0 * N),
        error_estimate=err / (2.0 * N) + 4.0 * _EPS,
        k_used=params.k_terms,
        n_used=0,
    )


def zeta_odd_general(
    N: int, pair: ModularPair, table: BernoulliTable, params: EvalParams
) -> SeriesValue:
    """zeta(2N+1) solved from the two-parameter modular identity
    2N a^{-N}(zeta(2N+1) + 2 L_a) + a^{1-N} S_a - (-b)^{1-N} S_b = RHS,
    where L_a is the a-scaled Lambert sum, S_a/S_b the scaled csch^2 sums,
    a b = pi^2, and RHS = 2^{2N+1} sum_j (-1)^{j+1}(2j-1) a^{N+1-j} b^j
    (B-ratios exact, parameter powers in floating point)."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    if table.max_index < 2 * N + 2:
        raise ValueError(f"table holds B_0..B_{table.max_index}, need B_{2 * N + 2}")
    a, b = pair.alpha, pair.beta
    # the hyperbolic series here decay like e^{-2 min(a,b) k}, not e^{-2 pi k},
    # so size the k-range from the slower scale; k_terms keeps its meaning for
    # the pi-scaled families and acts as a floor
    k_eff = max(
        params.k_terms, 2 + math.ceil(math.log(400.0 / params.tol) / (2.0 * min(a, b)))
    )
    rhs_terms = []
    for j in range(N + 2):
        sign = -1.0 if j % 2 == 0 else 1.0
        ratio = float(
            bernoulli_over_factorial(table, 2 * j)
            * bernoulli_over_factorial(table, 2 * N + 2 - 2 * j)
        )
        rhs_terms.append(sign * (2 * j - 1) * a ** (N + 1 - j) * b**j * ratio)
    rhs = 2.0 ** (2 * N + 1) * math.fsum(rhs_terms)
    rhs_mass = 2.0 ** (2 * N + 1) * math.fsum(abs(t) for t in rhs_terms)
    lam_a, lam_a_tail = _power_lambert_sum(-2 * N - 1, a, k_eff)
    s_a, s_a_tail = _power_csch2_sum(-2 * N, a, k_eff)
    s_b, s_b_tail = _power_csch2_sum(-2 * N, b, k_eff)
    sign_b = 1.0 if (1 - N) % 2 == 0 else -1.0
    lhs_rest = a ** (1 - N) * s_a - sign_b * b ** (1 - N) * s_b
    value = (rhs - lhs_rest) * a**N / (2.0 * N) - 2.0 * lam_a
    err = (
        a ** (1 - N) * s_a_tail + b ** (1 - N) * s_b_tail + 4.0 * _EPS * rhs_mass
    ) * a**N / (2.0 * N) + 2.0 * lam_a_tail
    return SeriesValue(
        value=value,
        error_estimate=err + 4.0 * _EPS * (abs(value) + 1.0),
        k_used=k_eff,
        n_used=0,
    )


def _lambert_closed_form(m: int, table: BernoulliTable) -> float:
    """B_{2m}/(4m), the shared closed form of the odd-power Lambert sum and
    its integral twin."""
    return float(Fraction(table.values[2 * m]) / (4 * m))


def _lambert_integral(m: int) -> float:
    """Quadrature of the integral twin of lambert_sum(2m-1): the integrand is
    the summand with k made continuous. Past t=40 it is below 1e-100."""
    integral, _ = quad(
        lambda t: t ** (2 * m - 1) * _inv_expm1(_TWO_PI * t), 0.0, 40.0, limit=200
    )
    return integral


def lambert_identity_residual(m: int, table: BernoulliTable, params: EvalParams) -> float:
    """lambert_sum(2m-1) minus its closed form B_{2m}/(4m), for odd m > 1.

    Also evaluates the integral twin (the integrand is formally identical to
    the summand) by quadrature and checks it against the same closed form.
    """
    if m <= 1 or m % 2 == 0:
        raise ValueError("m must be an odd integer > 1")
    if table.max_index < 2 * m:
        raise ValueError(f"table holds B_0..B_{table.max_index}, need B_{2 * m}")
    closed = _lambert_closed_form(m, table)
    integral = _lambert_integral(m)
    if abs(integral - closed) > 1e-10:
        raise AssertionError(
            f"integral twin {integral!r} strays from closed form {closed!r}"
        )
    return lambert_sum(2 * m - 1, params).value - closed


def asymptotic_residual(x: float, params: EvalParams) -> float:
    """psi(x+1) - (pi/3) log x + (pi/2) sum_k log|x^4-k^4|/sinh^2(pi k),
    evaluated on the half-integer sequence x = N + 1/2; decays like 1/(2x)."""
    if not (x >= 1.5 and x % 1.0 == 0.5):
        raise ValueError("x must be N + 1/2 for a positive integer N")
    log_sum = math.fsum(
        planner.log_abs_quartic_gap(float(k), x) * _csch2(math.pi * k)
        for k in range(1, params.k_terms + 1)
    )
    return psi_oracle(x) - (math.pi / 3.0) * math.log(x) + (math.pi / 2.0) * log_sum
