"""Series engine: digamma and trigamma evaluation, the exponential double
series, Euler-gamma routes, odd zeta values, and the hyperbolic identities.

Expected values come from three independent sources: the classical recurrence
oracles, quadrature of the integral form of the double series, and literature
decimals for zeta at small odd integers.
"""

import dataclasses
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from fractions import Fraction

from rapidpsi import identities, planner, series
from rapidpsi.bernoulli import build_bernoulli_table
from rapidpsi.errors import GuardBandError
from rapidpsi.oracles import (
    euler_gamma_reference,
    gamma_plus_re_psi,
    psi_oracle,
    re_psi_one_plus_ik,
    s_integral_oracle,
    zeta_direct_oracle,
)
from rapidpsi.params import (
    GAMMA_SOURCE_ANY_X,
    GAMMA_SOURCE_INTEGER,
    EvalParams,
    ModularPair,
)

TABLE = build_bernoulli_table(20)
P12 = EvalParams(tol=1e-12, k_terms=12, n_terms=200000)
P_PRIME = EvalParams(tol=1e-12, k_terms=12, n_terms=16)

# literature decimals, correctly rounded
ZETA_ODD_REF = {1: 1.2020569031595942854, 2: 1.0369277551433699263, 3: 1.0083492773819228268}
TWO_LOG2 = 2.0 * math.log(2.0)


def _planned(x: float, tol: float = 1e-12):
    return series.psi_ramanujan(x, planner.plan(tol, x))


# ---------------------------------------------------------------- digamma


@pytest.mark.parametrize("x", [0.25, 0.5, 0.9, 1.5, 2.75, 4.2, 10.3, 25.0, 100.0])
def test_psi_matches_oracle(x):
    sv = _planned(x)
    assert abs(sv.value - psi_oracle(x)) <= sv.error_estimate + 1e-13
    assert sv.error_estimate <= 2e-12


def test_psi_half_integer_closed_form():
    # psi(3/2) = 2 - gamma - 2 log 2, so the x = 1/2 evaluation has an exact target
    target = 2.0 - euler_gamma_reference() - TWO_LOG2
    assert abs(_planned(0.5).value - target) <= 1e-13


def test_psi_at_exact_integer_uses_guard_limits():
    # psi(2) = 1 - gamma
    assert abs(_planned(1.0).value - 0.42278433509846713) <= 1e-13


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("off", [-9.9e-4, -5e-4, 0.0, 5e-4, 9.9e-4, -1.01e-3, 1.01e-3, 2e-3])
def test_psi_accuracy_through_guard_band(m, off):
    x = m + off
    sv = _planned(x)
    assert abs(sv.value - psi_oracle(x)) <= sv.error_estimate + 1e-13


def test_psi_continuous_across_guard_boundary():
    # route switch at |x - m| = guard_delta must not move the value visibly
    for m in (1, 2, 3):
        d = planner.plan(1e-12, float(m)).guard_delta
        xs = [m - 1.01 * d, m - 0.5 * d, m + 0.5 * d, m + 1.01 * d]
        vals = [_planned(x).value for x in xs]
        for a, b in zip(vals, vals[1:]):
            assert abs(a - b) <= 1e-2


def test_psi_with_explicit_params():
    sv = series.psi_ramanujan(2.5, EvalParams(tol=1e-12, k_terms=8, n_terms=200000))
    assert abs(sv.value - psi_oracle(2.5)) <= 1e-12


def test_psi_rejects_nonpositive_x():
    for bad in (0.0, -1.0, -0.5):
        with pytest.raises(ValueError):
            series.psi_ramanujan(bad, P12)


def test_psi_error_estimate_is_genuine():
    # refining the evaluation moves the value by less than the coarse estimate
    for x in (0.3, 1.7, 4.2, 9.1):
        p = planner.plan(1e-10, x)
        coarse = series.psi_ramanujan(x, p)
        fine = series.psi_ramanujan(
            x,
            dataclasses.replace(
                p,
                tol=p.tol / 2.0,
                k_terms=2 * p.k_terms,
                n_terms=min(2 * p.n_terms, planner.MAX_N_TERMS),
            ),
        )
        assert abs(coarse.value - fine.value) <= coarse.error_estimate


def test_cot_pair_limit_forms_agree():
    # the two closed forms for the guarded pole pair at eps = 0
    for m in (1, 2, 3, 4):
        big_e = math.expm1(2.0 * math.pi * m)
        a = math.pi / (2.0 * math.sinh(math.pi * m) ** 2)
        b = 2.0 * math.pi * math.exp(2.0 * math.pi * m) / (big_e * big_e)
        assert abs(a - b) <= 16.0 * math.ulp(1.0) * a + 1e-30
        limit = 1.0 / (2.0 * m * big_e) - b
        assert abs(series._guard_pole_pair(m, 0.0) - limit) <= 1e-15
        # the eps -> 0 limit is attained continuously
        assert abs(series._guard_pole_pair(m, 1e-9) - limit) <= 1e-6


# ------------------------------------------------------- double series S


@pytest.mark.parametrize(
    "x,pin",
    [(0.3, 0.7417841548152989), (1.5, 0.00021480502322368842)],
)
def test_double_series_pinned_values(x, pin):
    sv = series.double_series_S(x, planner.plan(1e-12, x))
    assert abs(sv.value - pin) <= 5e-13


@pytest.mark.parametrize("x", [0.3, 1.2])
def test_double_series_matches_quadrature(x):
    sv = series.double_series_S(x, planner.plan(1e-12, x))
    assert abs(sv.value - s_integral_oracle(x)) <= 1e-9


def test_double_series_estimate_covers_short_k_truncation():
    # with too few outer terms at small x the value misses, but the reported
    # estimate must still dominate the miss
    sv = series.double_series_S(0.3, EvalParams(tol=1e-12, k_terms=12, n_terms=200000))
    miss = abs(sv.value - s_integral_oracle(0.3))
    assert miss > 1e-10
    assert miss <= sv.error_estimate


def test_double_series_at_integer_collapses_to_cosine_row():
    # at integer x the sine row vanishes and the cosine row is gamma + Re psi(1+ik)
    sv = series.double_series_S(2.0, P12)
    closed = -2.0 * math.pi * math.fsum(
        k * math.exp(-4.0 * math.pi * k) * gamma_plus_re_psi(float(k))
        for k in range(1, P12.k_terms + 1)
    )
    assert abs(sv.value - closed) <= 1e-16


def test_double_series_rejects_nonpositive_x():
    with pytest.raises(ValueError):
        series.double_series_S(0.0, P12)


# ----------------------------------------------------------- Euler gamma


@pytest.mark.parametrize("m", [1, 2, 3])
def test_gamma_at_integer(m):
    g = series.gamma_at_integer(m, EvalParams(tol=1e-13, k_terms=10, n_terms=1000))
    assert g.source == GAMMA_SOURCE_INTEGER
    assert abs(g.value - euler_gamma_reference()) <= 1e-13


def test_gamma_at_integer_validation():
    for bad in (0, -1):
        with pytest.raises(ValueError):
            series.gamma_at_integer(bad, P12)


@pytest.mark.parametrize("x", [0.5, 3.25])
def test_gamma_any_x(x):
    g = series.gamma_any_x(x, planner.plan(1e-12, x))
    assert g.source == GAMMA_SOURCE_ANY_X
    assert abs(g.value - euler_gamma_reference()) <= 1e-11


def test_gamma_any_x_is_argument_invariant():
    vals = [
        series.gamma_any_x(x, planner.plan(1e-12, x)).value
        for x in (0.5, 1.5 + 1e-3, 2.25, 6.75)
    ]
    assert max(vals) - min(vals) <= 1e-12


def test_gamma_routes_agree():
    gi = series.gamma_at_integer(2, EvalParams(tol=1e-13, k_terms=10, n_terms=1000))
    gx = series.gamma_any_x(4.5, planner.plan(1e-12, 4.5))
    assert abs(gi.value - gx.value) <= gi.error_estimate + gx.error_estimate + 1e-13


def test_gamma_any_x_guard_band_redirects():
    with pytest.raises(GuardBandError) as exc:
        series.gamma_any_x(2.0005, P12)
    assert "gamma_at_integer(m=2)" in exc.value.suggestion


def test_gamma_any_x_rejects_nonpositive_x():
    with pytest.raises(ValueError):
        series.gamma_any_x(-0.5, P12)


# -------------------------------------------------------------- trigamma


def test_trigamma_half_integer_closed_form():
    # psi'(3/2) = pi^2/2 - 4
    v = series.psi_prime_ramanujan(0.5, P_PRIME).value
    assert abs(v - (math.pi * math.pi / 2.0 - 4.0)) <= 1e-12


@pytest.mark.parametrize("x", [0.4, 1.6, 3.3, 7.7])
def test_trigamma_matches_central_difference(x):
    d1 = series.psi_prime_ramanujan(x, P_PRIME).value
    h = 1e-4
    lo = _planned(x - h, tol=1e-13).value
    hi = _planned(x + h, tol=1e-13).value
    assert abs(d1 - (hi - lo) / (2.0 * h)) <= 1e-7


def test_trigamma_small_x_limit_is_basel():
    # psi'(x+1) -> zeta(2) as x -> 0+
    v = series.psi_prime_ramanujan(0.01, P_PRIME).value
    assert abs(v - math.pi * math.pi / 6.0) <= 0.03


def test_trigamma_slope_richardson():
    # psi'(x+1) = zeta(2) - 2 zeta(3) x + ..., extrapolate the slope to x = 0
    zeta2 = math.pi * math.pi / 6.0
    hs = [0.1 * 2.0**-j for j in range(5)]
    g = [(series.psi_prime_ramanujan(h, P_PRIME).value - zeta2) / h for h in hs]
    tab = g[:]
    for lvl in range(1, len(hs)):
        for i in range(len(hs) - lvl):
            tab[i] = (hs[i + lvl] * tab[i] - hs[i] * tab[i + 1]) / (hs[i + lvl] - hs[i])
    assert abs(tab[0] - (-2.0 * ZETA_ODD_REF[1])) <= 1e-6


def test_trigamma_guard_band_and_validation():
    with pytest.raises(GuardBandError):
        series.psi_prime_ramanujan(2.0005, P_PRIME)
    with pytest.raises(ValueError):
        series.psi_prime_ramanujan(-1.0, P_PRIME)


# ---------------------------------------------------------------- Re psi


@pytest.mark.parametrize("x", [0.5, 1.5])
def test_re_psi_complex_matches_oracle(x):
    rp = series.re_psi_complex_ramanujan(x, P12)
    assert abs(rp.value - re_psi_one_plus_ik(x)) <= 1e-10


def test_re_psi_gamma_consistency():
    rp = series.re_psi_complex_ramanujan(2.5, P12)
    assert abs(euler_gamma_reference() + rp.value - gamma_plus_re_psi(2.5)) <= 1e-11


def test_re_psi_guard_band():
    with pytest.raises(GuardBandError):
        series.re_psi_complex_ramanujan(3.0002, P12)


# --------------------------------------------------------------- zeta odd


def test_zeta_odd_j_sum_exact_fractions():
    assert series._zeta_odd_j_sum(1, TABLE) == Fraction(7, 720)
    assert series._zeta_odd_j_sum(0, TABLE) == Fraction(1, 6)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_zeta_odd_values(N):
    zv = series.zeta_odd(N, TABLE, P12)
    assert abs(zv.value - ZETA_ODD_REF[N]) <= 2e-15
    assert abs(zv.value - zeta_direct_oracle(2 * N + 1)) <= 1e-12 + 1e-13


def test_zeta_odd_validation():
    with pytest.raises(ValueError):
        series.zeta_odd(0, TABLE, P12)
    with pytest.raises(ValueError):
        series.zeta_odd(1, build_bernoulli_table(2), P12)


@pytest.mark.parametrize("alpha", [math.pi, math.pi**2 / 2.0, 2.0 * math.pi**2])
@pytest.mark.parametrize("N", [1, 2])
def test_zeta_odd_general_matches_single_parameter(alpha, N):
    zg = series.zeta_odd_general(N, ModularPair.from_alpha(alpha), TABLE, P12)
    zo = series.zeta_odd(N, TABLE, P12)
    assert abs(zg.value - zo.value) <= 1e-11


def test_modular_pair_validation():
    with pytest.raises(ValueError):
        ModularPair(alpha=1.0, beta=1.0)
    with pytest.raises(ValueError):
        ModularPair.from_alpha(-2.0)


def test_zeta_even_closed_forms():
    assert series.zeta_even(0, TABLE) == -0.5
    assert abs(series.zeta_even(1, TABLE) - math.pi * math.pi / 6.0) <= 1e-15
    assert abs(series.zeta_even(3, TABLE) - math.pi**6 / 945.0) <= 1e-13
    with pytest.raises(ValueError):
        series.zeta_even(-1, TABLE)
    with pytest.raises(ValueError):
        series.zeta_even(15, TABLE)


# ------------------------------------------------- hyperbolic identities


def test_lambert_linear_closed_form():
    lam = series.lambert_sum(1, P12)
    assert abs(lam.value - (1.0 / 24.0 - 1.0 / (8.0 * math.pi))) <= 1e-15


def test_lambert_fifth_power_closed_form():
    lam = series.lambert_sum(5, P12)
    assert abs(lam.value - 1.0 / 504.0) <= 1e-14


def test_lambert_negative_power_window():
    lam = series.lambert_sum(-3, P12)
    assert 0.0 < lam.value <= planner.tail_bound("lambert", 1, power=-3).bound


def test_csch2_closed_form():
    sv = series.csch2_sum(P12)
    assert abs(sv.value - (1.0 / 6.0 - 1.0 / (2.0 * math.pi))) <= 1e-14


@pytest.mark.parametrize("m", [3, 5])
def test_lambert_identity_residual(m):
    assert abs(series.lambert_identity_residual(m, TABLE, P12)) <= 1e-14


def test_lambert_identity_rejects_even_or_unit_m():
    for bad in (1, 2, 4):
        with pytest.raises(ValueError):
            series.lambert_identity_residual(bad, TABLE, P12)


def test_lambert_integral_agrees_with_closed_form():
    for m in (3, 5):
        gap = series._lambert_integral(m) - series._lambert_closed_form(m, TABLE)
        assert abs(gap) <= 1e-10


# ------------------------------------------------------ asymptotic check


def test_asymptotic_residual_requires_half_integers():
    p = EvalParams(tol=1e-12, k_terms=10, n_terms=16)
    for bad in (2.0, 1.0, 0.75):
        with pytest.raises(ValueError):
            series.asymptotic_residual(bad, p)


def test_asymptotic_residual_stays_bounded_and_decays():
    p = EvalParams(tol=1e-12, k_terms=10, n_terms=16)
    xs = (2.5, 5.5, 10.5, 20.5)
    res = {x: series.asymptotic_residual(x, p) for x in xs}
    scaled = [x * abs(res[x]) for x in xs]
    # x*residual approaches 1/2 from below, so the scaled values stay flat
    for s in scaled:
        assert 0.4 <= s <= 0.55
    assert scaled[-1] <= 2.0 * scaled[0]
    assert abs(res[20.5]) <= abs(res[10.5]) * 1.05 * (10.5 / 20.5)
    # calibrated envelope: |residual| <= C / x on the sampled range
    big_c = 2.0 * max(scaled)
    assert abs(res[10.5]) <= big_c / 10.5


# ----------------------------------------------------- suite level checks


def test_identity_suite_all_green():
    results = identities.run_suite("all")
    assert len(results) >= 70
    failures = [c.name for c in results if not c.passed]
    assert failures == []


def test_digamma_partial_fraction_chain():
    # psi(x+1) + gamma equals the partial-fraction form on both sides of 1
    p = identities._default_params()
    for x in (0.3, 1.7, 4.2):
        psi = series.psi_ramanujan(x, planner.plan(1e-12, x))
        g = series.gamma_any_x(x, planner.plan(1e-12, x))
        rhs = identities.digamma_partial_fraction_rhs(x, p)
        residual = (psi.value - rhs) + g.value
        assert abs(residual) <= 2.0 * (psi.error_estimate + g.error_estimate) + 1e-13


def test_oracle_equivalence_on_grid():
    for x in identities.quasi_random_grid():
        sv = _planned(x)
        assert abs(sv.value - psi_oracle(x)) <= sv.error_estimate + 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.15, max_value=30.0))
def test_psi_matches_oracle_property(x):
    # skip the sliver around the guard boundary where the route is ambiguous
    gap = abs(x - round(x))
    assume(round(x) < 1 or gap <= 0.9e-3 or gap >= 3e-3)
    sv = series.psi_ramanujan(x, planner.plan(1e-10, x))
    assert abs(sv.value - psi_oracle(x)) <= sv.error_estimate + 1e-12
