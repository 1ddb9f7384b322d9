"""Analytic bound-state families from similarity transformations of the
Euler operator, with independent numerical cross-checks.

The package is organized around one pipeline: an algebraic engine that
exponentiates ladder operators on power series (`engine`), the potential
family those series solve (`family`, `spectrum`), point canonical
transformations of the exactly solvable pair (`pct`), the conditionally
solvable second class (`second_class`), finite-difference and Numerov
eigenvalue oracles (`oracle`), and a self-contained verification report
(`verify`) exposed through the `qbertrand` CLI (`cli`).
"""

from .engine import (MonomialTerm, OperatorA, OperatorO, WeightedPowerSeries,
                     apply_A, apply_O, exp_series, make_series, series_eval)
from .errors import (ComplexRoots, DegenerateCoefficient, DivergentNorm,
                     GridTooCoarse, NegativeDiscriminant, NoSignChange,
                     NotNormalizable, OracleError, QbError, TurningPointOnGrid,
                     WrongAlpha)
from .family import (NATURAL, AlphaClass, CouplingSet, FamilyParams,
                     PhysicalConstants, a0_constant, classify_alpha,
                     coulomb_params, couplings, oscillator_params,
                     potential_eval, solve_l_for_zero_energy)
from .oracle import Eigenpair, RadialGrid, fd_spectrum, numerov_eigen, residual
from .pct import (PctMap, PctSolution, affine_map, exp_map_potential,
                  exponential_map, identity_map, morse_view, pct_energy,
                  pct_potential, pct_solution, pct_wavefunction)
from .second_class import (DerivedCoefficients, SecondClassParams,
                           constant_independence_report, derived_coeffs,
                           eta_bar_exponents, F_functions, s_factor,
                           second_potential, second_wavefunction_series)
from .spectrum import (SpectralLine, Wavefunction, branch_select, discriminant,
                       energy_coulomb, energy_oscillator, epsilon_n, laguerre,
                       normalize, wavefunction_eval)
from .verify import build_report

__version__ = "0.1.0"

__all__ = [
    "MonomialTerm", "OperatorA", "OperatorO", "WeightedPowerSeries",
    "apply_A", "apply_O", "exp_series", "make_series", "series_eval",
    "QbError", "NegativeDiscriminant", "NotNormalizable", "DivergentNorm",
    "ComplexRoots", "DegenerateCoefficient", "TurningPointOnGrid", "WrongAlpha",
    "OracleError", "GridTooCoarse", "NoSignChange",
    "NATURAL", "AlphaClass", "CouplingSet", "FamilyParams", "PhysicalConstants",
    "a0_constant", "classify_alpha", "coulomb_params", "couplings",
    "oscillator_params", "potential_eval", "solve_l_for_zero_energy",
    "Eigenpair", "RadialGrid", "fd_spectrum", "numerov_eigen", "residual",
    "PctMap", "PctSolution", "affine_map", "exponential_map", "identity_map",
    "exp_map_potential", "morse_view", "pct_energy", "pct_potential",
    "pct_solution", "pct_wavefunction",
    "DerivedCoefficients", "SecondClassParams", "constant_independence_report",
    "derived_coeffs", "eta_bar_exponents", "F_functions", "s_factor",
    "second_potential", "second_wavefunction_series",
    "SpectralLine", "Wavefunction", "branch_select", "discriminant",
    "energy_coulomb", "energy_oscillator", "epsilon_n", "laguerre",
    "normalize", "wavefunction_eval",
    "build_report",
    "__version__",
]
