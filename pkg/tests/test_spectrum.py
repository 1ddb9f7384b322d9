"""Closed-form spectra, Laguerre recurrence, branch selection, normalization."""

import math

import numpy as np
import pytest
from scipy.special import genlaguerre

from qbertrand.errors import (DivergentNorm, NegativeDiscriminant,
                              NotNormalizable)
from qbertrand.family import FamilyParams, PhysicalConstants, coulomb_params, oscillator_params
from qbertrand.oracle import RadialGrid
from qbertrand.spectrum import (Wavefunction, branch_select, discriminant,
                                energy_coulomb, energy_oscillator, epsilon_n,
                                laguerre, normalize, wavefunction_eval)


def test_discriminant_known_cases():
    # both named cases: Delta = (2l+1)^2
    for l in range(4):
        assert discriminant(coulomb_params(l, -1.0)) == pytest.approx(
            (2 * l + 1) ** 2, rel=1e-14)
        assert discriminant(oscillator_params(l, 1.0)) == pytest.approx(
            (2 * l + 1) ** 2, rel=1e-14)


def test_epsilon_branches_bracket_termination():
    p = coulomb_params(2, -0.25)
    d = discriminant(p)
    for n in range(4):
        lo = epsilon_n(p, n, -1)
        hi = epsilon_n(p, n, +1)
        assert hi - lo == pytest.approx(math.sqrt(d), rel=1e-14)


def test_epsilon_negative_discriminant_raises():
    p = FamilyParams(alpha=1.0, a=1.0, b=1.0, c=5.0)
    assert discriminant(p) < 0
    with pytest.raises(NegativeDiscriminant):
        epsilon_n(p, 0, +1)


def test_coulomb_energy_values():
    assert energy_coulomb(0, 0).E == -0.5
    assert energy_coulomb(1, 0).E == -0.125
    assert energy_coulomb(0, 1).E == -0.125
    assert energy_coulomb(2, 3).E == pytest.approx(-0.5 / 36.0, rel=1e-15)
    with pytest.raises(ValueError):
        energy_coulomb(-1, 0)


def test_coulomb_energy_with_units():
    cst = PhysicalConstants(hbar=2.0, m=3.0, e2_over_4pieps0=0.5)
    line = energy_coulomb(0, 0, cst)
    assert line.E == pytest.approx(-3.0 * 0.25 / (2.0 * 4.0), rel=1e-15)


def test_oscillator_energy_values():
    assert energy_oscillator(0, 0, 1.0).E == 1.5
    assert energy_oscillator(1, 2, 1.0).E == 5.5
    assert energy_oscillator(1, 0, 0.5).E == pytest.approx(1.75, rel=1e-15)
    with pytest.raises(ValueError):
        energy_oscillator(0, 0, 0.0)


def test_spectral_line_carries_consistent_epsilon():
    # rebuilding the parameters at the stored sigma and epsilon must place the
    # level back on the termination branch
    line = energy_coulomb(2, 1)
    p = coulomb_params(1, -1.0 / 4.0).with_epsilon(line.epsilon_n)
    assert epsilon_n(p, 2, -1) == line.epsilon_n


def test_laguerre_against_scipy():
    rng = np.random.default_rng(3)
    x = rng.uniform(0.0, 25.0, size=40)
    for n in range(7):
        for k in (0.0, 0.5, 1.0, 2.5, 7.0):
            mine = laguerre(n, k, x)
            ref = genlaguerre(n, k)(x)
            np.testing.assert_allclose(mine, ref, rtol=1e-10, atol=1e-12)


def test_laguerre_scalar_and_validation():
    assert laguerre(0, 3.0, 5.0) == 1.0
    assert laguerre(1, 2.0, 0.5) == pytest.approx(2.5)
    with pytest.raises(ValueError):
        laguerre(-1, 0.0, 1.0)


def test_branch_select_prefers_regular_solution():
    for l in range(4):
        assert branch_select(coulomb_params(l, -1.0)) == +1
        assert branch_select(oscillator_params(l, 1.0)) == +1


def test_branch_select_rejects_growing_exponential():
    p = FamilyParams(alpha=2.0, a=0.5, b=1.0, c=0.0)
    with pytest.raises(NotNormalizable):
        branch_select(p)
    with pytest.raises(NegativeDiscriminant):
        branch_select(FamilyParams(alpha=2.0, a=-1.0, b=1.0, c=-5.0))


def test_wavefunctions_match_textbook_forms():
    r = np.linspace(0.1, 12.0, 60)
    # hydrogen ground state: psi ~ e^{-r}
    p = coulomb_params(0, -1.0).with_epsilon(energy_coulomb(0, 0).epsilon_n)
    w = Wavefunction(p, 0, +1)
    vals = wavefunction_eval(w, r)
    ratio = vals / np.exp(-r)
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-12)
    # oscillator n=0, l=1: psi ~ r e^{-r^2/2}
    po = oscillator_params(1, 1.0).with_epsilon(energy_oscillator(0, 1, 1.0).epsilon_n)
    wo = Wavefunction(po, 0, +1)
    valso = wavefunction_eval(wo, r)
    ratioo = valso / (r * np.exp(-r * r / 2.0))
    np.testing.assert_allclose(ratioo, ratioo[0], rtol=1e-12)


def test_wavefunction_node_count():
    # level n has exactly n radial nodes inside the classically allowed region
    r = np.linspace(0.05, 25.0, 4000)
    for n in range(4):
        p = coulomb_params(0, -1.0 / (n + 1)).with_epsilon(
            energy_coulomb(n, 0).epsilon_n)
        vals = wavefunction_eval(Wavefunction(p, n, +1), r)
        signs = np.sign(vals)
        flips = int(np.sum(signs[:-1] * signs[1:] < 0))
        assert flips == n


def test_normalize_unit_radial_integral():
    grid = RadialGrid(1e-3, 30.0, 4000)
    r = grid.r()
    for n, l in ((0, 0), (2, 1), (1, 3)):
        p = oscillator_params(l, 1.0).with_epsilon(
            energy_oscillator(n, l, 1.0).epsilon_n)
        w = normalize(Wavefunction(p, n, +1), grid)
        vals = wavefunction_eval(w, r)
        total = np.trapezoid(np.abs(vals) ** 2 * r ** 2, dx=grid.spacing)
        assert total == pytest.approx(1.0, abs=1e-7)


def test_normalize_rejects_growing_tail():
    # a > 0 makes the exponential factor blow up at large rho
    p = FamilyParams(alpha=2.0, a=0.5, b=0.5, c=0.0)
    w = Wavefunction(p, 1, +1)
    with pytest.raises(DivergentNorm):
        normalize(w, RadialGrid(1e-3, 30.0, 2000))


def test_normalize_rejects_truncated_support():
    # grid far too short: the tail estimate dominates the norm
    p = oscillator_params(0, 1.0).with_epsilon(energy_oscillator(0, 0, 1.0).epsilon_n)
    with pytest.raises(DivergentNorm):
        normalize(Wavefunction(p, 0, +1), RadialGrid(0.5, 1.2, 64))


def test_wavefunction_eval_rejects_nonpositive_rho():
    p = oscillator_params(0, 1.0)
    with pytest.raises(ValueError):
        wavefunction_eval(Wavefunction(p, 0, +1), np.array([0.5, -1.0]))
