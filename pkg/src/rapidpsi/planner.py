"""Tolerance-to-term-count planning and rigorous tail bounds.

Every bound is a closed-form overestimate of the true tail: soundness over
tightness (looseness up to roughly a factor of 10 is accepted by design).
The evaluators in series.py reuse these bounds to assemble honest error
estimates, so nothing here may depend on series.py.
"""

from __future__ import annotations

import math

from .errors import ToleranceError
from .params import DEFAULT_GUARD_DELTA, MIN_TOL, EvalParams, TailBound

_TWO_PI = 2.0 * math.pi
_Q_UNIT = math.exp(-_TWO_PI)  # common ratio of every k-series envelope

FAMILIES = ("exp_envelope", "csch2", "lambert", "log_csch2", "inner_sin", "inner_cos")

MAX_K_TERMS = 6000
MAX_N_TERMS = 500_000
MIN_N_TERMS = 16


def _geom(first: int, q: float) -> float:
    """sum_{k>=first} q^k."""
    return q**first / (1.0 - q)


def _geom_k(first: int, q: float) -> float:
    """sum_{k>=first} k q^k."""
    return q**first * (first - (first - 1) * q) / (1.0 - q) ** 2


def _geom_k_shift(first: int, q: float) -> float:
    """sum_{k>=first} (k - first) q^k."""
    return q**first * q / (1.0 - q) ** 2


def _geom_k_centered(first: int, q: float) -> float:
    """sum_{k>=first} k (k - first) q^k."""
    return q**first * (q * (1.0 + q) / (1.0 - q) ** 3 + first * q / (1.0 - q) ** 2)


def bound_csch2(first: int) -> float:
    """Tail of sum_k 1/sinh^2(pi k): each term is 4 q^k/(1-q^k)^2 with
    q = e^{-2 pi}, so the tail is at most 4 q^F / ((1-q)(1-q^F)^2)."""
    q = _Q_UNIT
    return 4.0 * _geom(first, q) / (1.0 - q**first) ** 2


def bound_lambert(power: int, first: int) -> float:
    """Tail of sum_k k^power/(e^{2 pi k}-1).

    Nonpositive powers: k^p <= F^p. Positive powers: (k/F)^p <= e^{p(k-F)/F},
    which keeps the comparison series geometric whenever q e^{p/F} < 1;
    otherwise peel explicit terms until it is.
    """
    q = _Q_UNIT
    if power <= 0:
        return float(first) ** power * _geom(first, q) / (1.0 - q**first)
    total = 0.0
    f = first
    while q * math.exp(power / f) >= 1.0:
        total += float(f) ** power * q**f / (1.0 - q**f)
        f += 1
    ratio = q * math.exp(power / f)
    total += float(f) ** power * q**f / ((1.0 - ratio) * (1.0 - q**f))
    return total


def bound_exp_envelope(first: int, x: float) -> float:
    """Outer tail of the double series 2 pi sum_k e^{-2 pi k x}(k^2 A_k - k^3 C_k).

    Two rigorous summand bounds, the smaller closed form wins:
    - uniform: |A_k| <= pi/(2k) and |C_k| <= (1.5 + log k)/k^2 give
      k (3.1 + log k), with log k linearized as log F + (k-F)/F;
    - Abel against the bounded partial sums of sin/cos (away from integer x):
      |A_k| <= s/(k^2+1) and |C_k| <= c/(k^2+1) with s = 1/|sin(theta/2)|,
      c = 1/2 + s/2, theta = 2 pi dist(x), so the summand is <= s + c k.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    q = math.exp(-_TWO_PI * x)
    if q >= 1.0:
        return math.inf
    lead = (3.1 + math.log(first)) * _geom_k(first, q)
    slope = _geom_k_centered(first, q) / first
    uniform = _TWO_PI * (lead + slope)
    dist = abs(x - round(x))
    if dist == 0.0:
        return uniform
    s = 1.0 / math.sin(math.pi * dist)
    c = 0.5 + 0.5 * s
    oscillatory = _TWO_PI * (s * _geom(first, q) + c * _geom_k(first, q))
    return min(uniform, oscillatory)


def _csch2_term(k: int) -> float:
    q = math.exp(-_TWO_PI * k) if _TWO_PI * k < 700.0 else 0.0
    return 4.0 * q / (1.0 - q) ** 2


def log_abs_quartic_gap(k: float, x: float) -> float:
    """log|k^4 - x^4| without forming fourth powers (safe for huge x)."""
    hi, lo = (x, k) if x > k else (k, x)
    return 4.0 * math.log(hi) + math.log1p(-((lo / hi) ** 4))


def bound_log_csch2(first: int, x: float, skip: int = 0) -> float:
    """Tail of (pi/2) sum_k |log|k^4 - x^4|| / sinh^2(pi k).

    Terms with k possibly below x+2 are bounded individually (infinite if one
    sits exactly on x); beyond F2 = max(first, ceil(x)+2) the log is positive
    and at most 4 log k, linearized at F2, against the geometric csch^2
    envelope. An index excluded from the series by the singularity guard is
    passed as skip.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    f2 = max(first, math.ceil(x) + 2)
    explicit = 0.0
    # csch^2(pi k) underflows to exactly 0 past k ~ 119, so the explicit walk
    # never needs to go further even for huge x
    for k in range(first, min(f2, 130)):
        if k == skip:
            continue
        if float(k) == x:
            return math.inf
        explicit += abs(log_abs_quartic_gap(float(k), x)) * _csch2_term(k)
    q = _Q_UNIT
    closed = (4.0 / (1.0 - q**f2) ** 2) * (
        4.0 * math.log(f2) * _geom(f2, q) + (4.0 / f2) * _geom_k_shift(f2, q)
    )
    return (math.pi / 2.0) * (explicit * (1.0 + 1e-12) + closed)


def bound_inner_sin(first: int, x: float) -> float:
    """Tail of the inner sine series at outer index k=1, weighted as it enters
    the double series: terms are bounded by 1/n^4, weight 2 pi k^4 e^{-2 pi k x}."""
    if not x > 0:
        raise ValueError("x must be positive")
    f = float(first)
    return _TWO_PI * math.exp(-_TWO_PI * x) * (1.0 / f**4 + 1.0 / (3.0 * f**3))


def bound_inner_cos(first: int, x: float) -> float:
    """Tail of the inner cosine series at outer index k=1, weighted as it
    enters the double series: terms bounded by 2/n^5, weight 2 pi k^5 e^{-2 pi k x}."""
    if not x > 0:
        raise ValueError("x must be positive")
    f = float(first)
    return _TWO_PI * math.exp(-_TWO_PI * x) * 2.0 * (1.0 / f**5 + 1.0 / (4.0 * f**4))


def bound_psi_k_sum(
    first: int, x: float, guard_delta: float = DEFAULT_GUARD_DELTA, skip: int = 0
) -> float:
    """Tail of sum_k 2k/((e^{2 pi k}-1)(k^2-x^2)) from k=first.

    Terms up to F2 = max(first, ceil(x)+2) are taken at their actual size,
    with |k^2-x^2| floored at guard_delta*(k+x) (an index inside the guard
    band is excluded from the plain sum and handled by the regularized pair,
    so the floor never understates a term that is actually summed); past F2,
    k - x >= 2 makes the factor 2k/(k^2-x^2) at most 1. The 1/(e^{2 pi k}-1)
    factor underflows to 0 past k ~ 119, capping the explicit walk.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    f2 = max(first, math.ceil(x) + 2)
    explicit = 0.0
    for k in range(first, min(f2, 130)):
        if k == skip:
            continue
        gap = max(abs(float(k) ** 2 - x * x), guard_delta * (k + x))
        q = math.exp(-_TWO_PI * k)
        explicit += 2.0 * k * q / ((1.0 - q) * gap)
    return explicit * (1.0 + 1e-12) + bound_lambert(0, f2)


def bound_lambert_scaled(power: int, first: int, a: float) -> float:
    """Tail of sum_k k^power/(e^{2 a k}-1) for power <= 0 and decay scale a."""
    if power > 0:
        raise ValueError("scaled lambert bound only supports power <= 0")
    if not a > 0:
        raise ValueError("a must be positive")
    q = math.exp(-2.0 * a)
    return float(first) ** power * _geom(first, q) / (1.0 - q**first)


def bound_csch2_power_scaled(power: int, first: int, a: float) -> float:
    """Tail of sum_k k^power/sinh^2(a k) for power <= 0 and scale a."""
    if power > 0:
        raise ValueError("scaled csch2 bound only supports power <= 0")
    if not a > 0:
        raise ValueError("a must be positive")
    q = math.exp(-2.0 * a)
    return float(first) ** power * 4.0 * _geom(first, q) / (1.0 - q**first) ** 2


def tail_bound(family: str, first_omitted: int, x: float = 1.0, power: int = 1) -> TailBound:
    """Closed-form tail bound for the named series family, starting at
    first_omitted. x weights the families that depend on it (ignored by
    csch2/lambert); power applies to the lambert family only."""
    if first_omitted < 1:
        raise ValueError("first_omitted must be >= 1")
    if family == "csch2":
        b = bound_csch2(first_omitted)
    elif family == "lambert":
        b = bound_lambert(power, first_omitted)
    elif family == "exp_envelope":
        b = bound_exp_envelope(first_omitted, x)
    elif family == "log_csch2":
        b = bound_log_csch2(first_omitted, x)
    elif family == "inner_sin":
        b = bound_inner_sin(first_omitted, x)
    elif family == "inner_cos":
        b = bound_inner_cos(first_omitted, x)
    else:
        raise ValueError(f"unknown tail family: {family!r}")
    return TailBound(family=family, first_omitted_index=first_omitted, bound=b)


def _inner_lengths(tol: float, x: float, k_terms: int) -> list[tuple[int, int]]:
    """Per-outer-index inner series lengths (sine length, cosine length).

    The inner budget tol/4 is split evenly over k_terms outer terms and the
    two inner series; lengths solve weight * tail(N) <= share with
    tail_sin(N) <= 1/(3 N^3) and tail_cos(N) <= 1/(2 N^4).
    """
    share = tol / (8.0 * k_terms)
    out = []
    for k in range(1, k_terms + 1):
        w = _TWO_PI * math.exp(-_TWO_PI * k * x)
        out.append(
            (
                _solve_length(w * float(k) ** 4, share, 3, 3.0),
                _solve_length(w * float(k) ** 5, share, 4, 2.0),
            )
        )
    return out


def _solve_length(weight: float, share: float, order: int, coeff: float) -> int:
    if weight <= 0.0 or share / weight >= 1.0 / coeff:
        return MIN_N_TERMS
    n = (weight / (coeff * share)) ** (1.0 / order)
    return max(MIN_N_TERMS, math.ceil(n))


def plan(tol: float, x: float) -> EvalParams:
    """Pick term counts so every tail family is individually below tol/4.

    k_terms starts at the envelope floor ceil(log(40/tol)/(2 pi)) and grows
    until the four outer families (k-sum, csch2, log-weighted csch2, double
    series envelope) all fit; n_terms covers the largest inner length.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    if not tol >= MIN_TOL:
        raise ToleranceError(f"tol {tol} unattainable in double precision (min {MIN_TOL})")
    budget = tol / 4.0
    # an index inside the guard band is handled by the regularized pair, not
    # the plain sums, so its singular bound terms are skipped
    nearest = round(x)
    guard = nearest if nearest >= 1 and abs(x - nearest) < DEFAULT_GUARD_DELTA else 0
    k = max(1, math.ceil(math.log(40.0 / tol) / _TWO_PI))
    while True:
        worst = max(
            bound_psi_k_sum(k + 1, x, skip=guard),
            bound_csch2(k + 1),
            bound_log_csch2(k + 1, x, skip=guard),
            bound_exp_envelope(k + 1, x),
        )
        if worst <= budget:
            break
        k += 1
        if k > MAX_K_TERMS:
            raise ToleranceError(
                f"outer tails cannot reach tol={tol} at x={x} within {MAX_K_TERMS} terms"
            )
    n = max(max(pair) for pair in _inner_lengths(tol, x, k))
    if n > MAX_N_TERMS:
        raise ToleranceError(
            f"inner series need {n} terms for tol={tol} at x={x} (cap {MAX_N_TERMS})"
        )
    return EvalParams(tol=tol, k_terms=k, n_terms=n, guard_delta=DEFAULT_GUARD_DELTA)
