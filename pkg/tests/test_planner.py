"""Truncation planner: tail-bound soundness by brute-force over-summation,
strict monotonicity, and the plan() contract."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rapidpsi import planner, series
from rapidpsi.errors import ToleranceError
from rapidpsi.oracles import psi_oracle
from rapidpsi.params import EvalParams, TailBound

TWO_PI = 2.0 * math.pi


def _csch2(t):
    if t > 350.0:
        return 0.0
    q = math.exp(-2.0 * t)
    return 4.0 * q / (1.0 - q) ** 2


def _inv_expm1(t):
    if t > 700.0:
        return 0.0
    q = math.exp(-t)
    return q / (1.0 - q)


def _brute_tail(family: str, first: int, x: float) -> float:
    """Direct over-summation of the quantity each family's bound dominates,
    to 10x more terms than could plausibly matter."""
    span = max(10 * first, first + 200)
    if family == "csch2":
        return sum(_csch2(math.pi * k) for k in range(first, span))
    if family == "log_csch2":
        return (math.pi / 2.0) * sum(
            abs(planner.log_abs_quartic_gap(float(k), x)) * _csch2(math.pi * k)
            for k in range(first, span)
            if float(k) != x
        )
    if family == "inner_sin":
        # magnitude envelope of the sine-remainder terms at the dominant k=1
        return TWO_PI * math.exp(-TWO_PI * x) * sum(
            1.0 / (n * n * (n * n + 1.0)) for n in range(first, span)
        )
    if family == "inner_cos":
        return TWO_PI * math.exp(-TWO_PI * x) * sum(
            2.0 / (n**3 * (n * n + 1.0)) for n in range(first, span)
        )
    if family == "exp_envelope":
        # genuine double-series terms, inner sums taken long enough that their
        # own truncation is negligible against the bound
        total = 0.0
        theta = TWO_PI * (x - round(x))
        for k in range(first, first + 40):
            t = TWO_PI * k * x
            if t > 700.0:
                break
            a, c, _, _ = series._inner_pair(k, theta, 4000, 4000)
            total += TWO_PI * math.exp(-t) * (k * k * abs(a) + k**3 * abs(c))
        return total
    raise AssertionError(family)


@pytest.mark.parametrize("family", ["csch2", "log_csch2", "inner_sin", "inner_cos", "exp_envelope"])
def test_soundness_by_oversummation(family):
    rng = random.Random(hash(family) & 0xFFFF)
    for _ in range(20):
        first = rng.randint(1, 25)
        x = 0.1 + rng.random() * 12.0
        if family == "log_csch2" and abs(x - round(x)) < 1e-3:
            x += 0.01
        bound = planner.tail_bound(family, first, x).bound
        # the csch2 bound is first-term tight, so leave ulp-level headroom
        assert _brute_tail(family, first, x) <= bound * (1.0 + 1e-12)


def test_lambert_soundness_all_powers():
    rng = random.Random(7)
    for _ in range(20):
        power = rng.choice([-5, -3, -1, 0, 1, 2, 5, 9])
        first = rng.randint(1, 20)
        brute = sum(
            float(k) ** power * _inv_expm1(TWO_PI * k) for k in range(first, 10 * first + 200)
        )
        assert brute <= planner.tail_bound("lambert", first, power=power).bound


@pytest.mark.parametrize("family", planner.FAMILIES)
def test_strict_monotonicity_in_first_omitted(family):
    for x in (0.7, 2.3):
        previous = None
        for first in range(1, 40):
            b = planner.tail_bound(family, first, x).bound
            if previous is not None and math.isfinite(previous):
                assert b < previous
            previous = b


def test_csch2_example_value():
    # printed closed form of the k>=11 tail; the sound bound sits a hair above
    printed = 4.0 * math.exp(-22.0 * math.pi) / (1.0 - math.exp(-TWO_PI))
    bound = planner.tail_bound("csch2", 11).bound
    assert printed * (1.0 - 1e-12) <= bound <= printed * (1.0 + 1e-9)
    assert sum(_csch2(math.pi * k) for k in range(11, 1001)) <= bound * (1.0 + 1e-12)


def test_exp_envelope_first_term_dominates():
    assert planner.tail_bound("exp_envelope", 1, 1.0).bound >= TWO_PI * math.exp(-TWO_PI)


def test_inner_cos_weighted_example():
    assert planner.tail_bound("inner_cos", 100000, 0.3).bound <= 1e-10


def test_tail_bound_validation():
    with pytest.raises(ValueError):
        planner.tail_bound("no_such_family", 3)
    with pytest.raises(ValueError):
        planner.tail_bound("csch2", 0)
    with pytest.raises(ValueError):
        TailBound(family="csch2", first_omitted_index=1, bound=-1.0)


def test_log_csch2_singular_omitted_term_is_unbounded():
    # truncating just below an integer x leaves the singular term in the tail
    assert planner.tail_bound("log_csch2", 2, 5.0).bound == math.inf
    assert math.isfinite(planner.bound_log_csch2(2, 5.0, skip=5))


def test_plan_examples():
    assert planner.plan(1e-13, 1.0).k_terms <= 8
    assert planner.plan(1e-6, 1.0).k_terms <= 4
    assert planner.plan(1e-13, 10.0).n_terms < planner.plan(1e-13, 1.0).n_terms


def test_plan_floor_and_split():
    for tol, x in ((1e-6, 1.0), (1e-10, 2.2), (1e-13, 0.6)):
        p = planner.plan(tol, x)
        assert p.k_terms >= math.ceil(math.log(40.0 / tol) / TWO_PI)
        first = p.k_terms + 1
        assert planner.bound_csch2(first) <= tol / 4.0
        assert planner.bound_exp_envelope(first, x) <= tol / 4.0
        assert planner.bound_log_csch2(first, x) <= tol / 4.0


def test_plan_validation():
    with pytest.raises(ValueError):
        planner.plan(1e-12, 0.0)
    with pytest.raises(ToleranceError):
        planner.plan(1e-16, 1.0)
    # inner series would need more terms than the double-precision cap allows
    with pytest.raises(ToleranceError):
        planner.plan(1e-12, 0.05)


def test_plan_handles_extreme_arguments():
    assert planner.plan(1e-12, 1e6).k_terms >= 1
    assert planner.plan(1e-12, 1e100).k_terms >= 1


def test_plan_guard_skip_at_integer_x():
    # the singular k=10 log term is handled by the guard pair, not the tail
    assert planner.plan(1e-13, 10.0).k_terms < 10


def test_plan_soundness_on_grid():
    for x, tol in ((0.6, 1e-11), (1.7, 1e-8), (3.2, 1e-13), (12.9, 1e-12)):
        sv = series.psi_ramanujan(x, planner.plan(tol, x))
        assert abs(sv.value - psi_oracle(x)) <= tol + 1e-13


@settings(max_examples=25, deadline=None)
@given(
    st.sampled_from(planner.FAMILIES),
    st.integers(min_value=1, max_value=200),
    st.floats(min_value=0.1, max_value=30.0),
)
def test_bounds_nonnegative_and_nonincreasing(family, first, x):
    b1 = planner.tail_bound(family, first, x).bound
    b2 = planner.tail_bound(family, first + 1, x).bound
    assert b1 >= 0.0
    assert b2 <= b1 or not math.isfinite(b1)
