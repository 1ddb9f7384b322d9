"""Second potential family: coefficients, potential display, series, scan."""

import math

import numpy as np
import pytest

from qbertrand.engine import series_eval
from qbertrand.errors import (ComplexRoots, DegenerateCoefficient,
                              TurningPointOnGrid)
from qbertrand.oracle import RadialGrid
from qbertrand.second_class import (SecondClassParams,
                                    constant_independence_report,
                                    derived_coeffs, eta_bar_exponents,
                                    F_functions, s_factor, second_potential,
                                    second_wavefunction_series)

WORKED = SecondClassParams(alpha=2.0, beta=0.0, delta=0.0, gamma=1.0,
                           a=1.0, b=1.0)


def test_params_invariant():
    with pytest.raises(ValueError):
        SecondClassParams(alpha=1.0, beta=0.0, delta=0.0, gamma=1.0,
                          a=1.0, b=1.0)
    with pytest.raises(ValueError):
        SecondClassParams(alpha=2.0, beta=0.0, delta=0.0, gamma=0.0,
                          a=1.0, b=1.0)


def test_worked_coefficients_are_exact():
    dc = derived_coeffs(WORKED)
    assert (dc.A1, dc.A2) == (1.0, 1.0)
    assert (dc.B1, dc.B2, dc.B3) == (4.0, 0.5, 0.0)
    assert (dc.C1, dc.C2, dc.C3) == (2.0, 0.0, 0.0)
    assert (dc.D1, dc.D2, dc.D3) == (-4.0, 1.0, 6.0)


def test_coefficient_definition_identities():
    rng = np.random.default_rng(13)
    for _ in range(50):
        p = SecondClassParams(
            alpha=float(rng.uniform(1.2, 3.0)),
            beta=float(rng.uniform(-1.0, 1.0)),
            delta=float(rng.uniform(-0.5, 0.5)),
            gamma=float(rng.uniform(0.3, 2.0)),
            a=float(rng.uniform(0.3, 2.0)),
            b=float(rng.uniform(0.2, 2.0)))
        try:
            dc = derived_coeffs(p)
        except DegenerateCoefficient:
            continue
        assert dc.A1 * dc.A2 ** 2 == pytest.approx(1.0, rel=1e-12)
        assert dc.B3 + dc.B1 * dc.B2 ** 2 == pytest.approx(1.0 + p.beta, rel=1e-10)
        assert dc.D3 + dc.D1 * dc.D2 ** 2 + 4.0 / dc.D1 == pytest.approx(
            1.0 + p.beta, rel=1e-10)
        assert dc.C3 * p.b + dc.C1 * dc.C2 ** 2 == pytest.approx(0.0, abs=1e-10)


def test_degenerate_coefficients_are_named():
    # alpha a + 2b = 0 kills B1 before B2 can form
    with pytest.raises(DegenerateCoefficient, match="B2"):
        derived_coeffs(SecondClassParams(alpha=2.0, beta=0.0, delta=0.0,
                                         gamma=1.0, a=1.0, b=-1.0))
    # b (a alpha - a + b) = 0 with b != 0 kills C1
    with pytest.raises(DegenerateCoefficient, match="C2"):
        derived_coeffs(SecondClassParams(alpha=0.5, beta=0.0, delta=0.0,
                                         gamma=1.0, a=1.0, b=0.5))
    # b = 0 also zeroes C1
    with pytest.raises(DegenerateCoefficient):
        derived_coeffs(SecondClassParams(alpha=2.0, beta=0.0, delta=0.0,
                                         gamma=1.0, a=1.0, b=0.0))
    # 2b = 3 alpha a kills D1
    with pytest.raises(DegenerateCoefficient, match="D2"):
        derived_coeffs(SecondClassParams(alpha=2.0, beta=0.0, delta=0.0,
                                         gamma=1.0, a=1.0, b=3.0))


def test_eta_bar_exponents():
    p = SecondClassParams(alpha=2.0, beta=1.0, delta=-2.0, gamma=1.0,
                          a=1.0, b=1.0)
    s_plus, s_minus = eta_bar_exponents(p)
    assert (s_plus, s_minus) == (1.0, -2.0)
    with pytest.raises(ComplexRoots):
        eta_bar_exponents(SecondClassParams(alpha=2.0, beta=0.0, delta=1.0,
                                            gamma=1.0, a=1.0, b=1.0))


def test_F_functions_worked_point():
    dc = derived_coeffs(WORKED)
    f1, f2, f3 = F_functions(dc, WORKED, 1.0)
    assert (f1, f2, f3) == (4.0, 9.0, 2.0)
    with pytest.raises(ValueError):
        F_functions(dc, WORKED, np.array([1.0, 0.0]))


def test_second_potential_worked_value():
    # at rho=1 the five terms sum to -90/64 - 8 + 39 - 2 = 883/32 in the
    # dimensionless display; natural units halve it
    dc = derived_coeffs(WORKED)
    v = second_potential(dc, WORKED, 1.0)
    assert v == pytest.approx(883.0 / 64.0, rel=1e-13)


def test_second_potential_centrifugal_term():
    p = SecondClassParams(alpha=2.0, beta=0.0, delta=0.0, gamma=1.0,
                          a=1.0, b=1.0, l=2.0)
    dc = derived_coeffs(p)
    v0 = second_potential(dc, WORKED, 2.5)
    vl = second_potential(dc, p, 2.5)
    assert vl - v0 == pytest.approx(-0.5 * 6.0 / 2.5 ** 2, rel=1e-12)


def test_second_potential_large_rho_decay():
    # every surviving term falls off like rho^{-2} regardless of alpha
    rho = np.geomspace(1e4, 1e6, 30)
    for alpha, b in ((2.0, 1.0), (0.5, 0.7), (3.0, 1.3)):
        p = SecondClassParams(alpha=alpha, beta=0.2, delta=0.1, gamma=0.8,
                              a=0.9, b=b)
        dc = derived_coeffs(p)
        v = np.abs(second_potential(dc, p, rho))
        slope = np.polyfit(np.log(rho), np.log(v), 1)[0]
        assert slope == pytest.approx(-2.0, abs=0.1)


def test_s_factor_gauge_and_log_derivative():
    dc = derived_coeffs(WORKED)
    grid = RadialGrid(0.5, 4.0, 2001)
    s = s_factor(dc, WORKED, grid)
    r = grid.r()
    assert s[len(r) // 2] == 1.0
    assert np.all(s > 0)
    # central difference of log S against the defining log-derivative
    i = 700
    got = (math.log(s[i + 1]) - math.log(s[i - 1])) / (2.0 * grid.spacing)
    t = r[i] ** (WORKED.alpha - 1.0)
    f1 = dc.A1 * r[i] ** 2 * (t + dc.A2) ** 2
    f2 = dc.B1 * r[i] * (t + dc.B2) ** 2 + dc.B3
    f1p = 2.0 * dc.A1 * r[i] * (t + dc.A2) * (WORKED.alpha * t + dc.A2)
    want = (f2 - 2.0 * f1p) / (2.0 * f1) - 1.0 / r[i]
    assert got == pytest.approx(want, rel=1e-5)


def test_s_factor_turning_point_detection():
    # a < 0 makes A2 negative, so t + A2 crosses zero inside the grid
    p = SecondClassParams(alpha=2.0, beta=0.0, delta=0.0, gamma=1.0,
                          a=-1.0, b=2.0)
    dc = derived_coeffs(p)
    assert dc.A2 == -1.0
    with pytest.raises(TurningPointOnGrid):
        s_factor(dc, p, RadialGrid(0.5, 2.0, 64))


def test_wavefunction_series_terminates_on_ladder_root():
    # factor a s + b vanishes at s = 2 after one step from s = 1
    p = SecondClassParams(alpha=2.0, beta=0.0, delta=0.0, gamma=0.7,
                          a=1.0, b=-2.0)
    s = second_wavefunction_series(p, 1.0, truncation=30)
    assert s.terminated
    assert len(s) == 2


def test_wavefunction_series_converges_when_not_terminating():
    # b/a irrational w.r.t. the half-integer exponent ladder: no factor root
    p = SecondClassParams(alpha=0.5, beta=0.0, delta=0.0, gamma=0.5,
                          a=0.7, b=1.0)
    s40 = second_wavefunction_series(p, 1.0, truncation=40)
    s60 = second_wavefunction_series(p, 1.0, truncation=60)
    assert s40.truncated
    v40 = series_eval(s40, 0.5)
    v60 = series_eval(s60, 0.5)
    assert abs(v60 - v40) < 1e-10 * max(1.0, abs(v60))
    with pytest.raises(ValueError):
        second_wavefunction_series(p, 1.0, truncation=0)


def test_constant_independence_scan_is_negative():
    report = constant_independence_report([0.5, 2.0], WORKED, seed=3, n_draws=2)
    assert report["negative_for_all"]
    for entry in report["entries"]:
        assert not entry["constant_independent"]
        assert entry["max_relative_misfit"] > 1e-6
        # near the origin a power steeper than the centrifugal tail survives;
        # far out the non-constant part is exactly centrifugal-like
        assert entry["small_rho_slope"] < -2.5
        assert entry["large_rho_slope"] == pytest.approx(-2.0, abs=0.2)


def test_constant_independence_rejects_alpha_one():
    with pytest.raises(ValueError):
        constant_independence_report([1.0], WORKED)
    with pytest.raises(ValueError):
        constant_independence_report([], WORKED)
