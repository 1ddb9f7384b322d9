"""The general central-potential family and its two distinguished members.

A similarity transformation with parameters (alpha, a, b, c, epsilon) maps the
Euler-operator eigenvalue problem onto a radial Schroedinger equation whose
potential is

    V(r) = E + g1 r^{2(alpha-1)} + g2 r^{alpha-2} + g3 r^{-2},

with couplings fixed by the transformation.  Constant-independent full
solvability survives only when one of the first two exponents degenerates to a
constant, which happens at alpha = 1 (Coulomb) and alpha = 2 (harmonic
oscillator); that exponent test is the quantum counterpart of Bertrand's
classical closed-orbit dichotomy and is what ``classify_alpha`` implements.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

ALPHA_MATCH_TOL = 1e-12   # alpha comparisons absorb decimal-config roundoff


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar, mass, Coulomb strength e^2/(4 pi eps0), oscillator frequency.

    Defaults are natural units, which turn every spectrum into pure numbers.
    """

    hbar: float = 1.0
    m: float = 1.0
    e2_over_4pieps0: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0 or self.m <= 0:
            raise ValueError("hbar and m must be positive")


NATURAL = PhysicalConstants()


@dataclass(frozen=True)
class FamilyParams:
    """Transformation parameters plus scale and angular momentum.

    ``lam`` is the length scale (rho = r/lam).  ``l`` may be non-integer to
    support the zero-energy solver; physical spectra use integers.  ``sigma``
    is stored by the Coulomb/oscillator constructors, which fix (a, b, c)
    through it; it stays None for hand-built parameter sets.
    """

    alpha: float
    a: float
    b: float
    c: float
    epsilon: float = 0.0
    lam: float = 1.0
    l: float = 0.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    sigma: float | None = None

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("a must be nonzero")
        if self.lam <= 0:
            raise ValueError("lam must be positive")
        if self.l < 0:
            raise ValueError("l must be >= 0")

    def with_epsilon(self, epsilon: float) -> "FamilyParams":
        return replace(self, epsilon=epsilon)


def a0_constant(p: FamilyParams) -> float:
    """The constant A0 = (b - 6a + 2 a alpha) / (2a) of the radial map."""
    return (p.b - 6.0 * p.a + 2.0 * p.a * p.alpha) / (2.0 * p.a)


@dataclass(frozen=True)
class CouplingSet:
    """Scaled couplings g_i, dimensionless tilde couplings, and exponents."""

    g1: float
    g2: float
    g3: float
    tg1: float
    tg2: float
    tg3: float
    exponents: tuple[float, float, float]


def couplings(p: FamilyParams) -> CouplingSet:
    """Coupling coefficients of the family potential for parameters ``p``.

    tg1 = hbar^2/(8 m a^2 lam^2)
    tg2 = hbar^2 (2 A0 - alpha + 5 - 2 eps)/(4 m a lam^2)
    tg3 = hbar^2 {A0(A0+1) - l(l+1) - [a(2-alpha)(3-alpha) + b alpha - 2b + c]/a}
          / (2 m lam^2)

    and g1, g2, g3 carry the lam^{2(1-alpha)}, lam^{2-alpha}, lam^2 scalings.
    """
    cst = p.constants
    h2 = cst.hbar ** 2
    A0 = a0_constant(p)
    tg1 = h2 / (8.0 * cst.m * p.a ** 2 * p.lam ** 2)
    tg2 = h2 * (2.0 * A0 - p.alpha + 5.0 - 2.0 * p.epsilon) / (4.0 * cst.m * p.a * p.lam ** 2)
    bracket = (p.a * (2.0 - p.alpha) * (3.0 - p.alpha)
               + p.b * p.alpha - 2.0 * p.b + p.c) / p.a
    tg3 = h2 * (A0 * (A0 + 1.0) - p.l * (p.l + 1.0) - bracket) / (2.0 * cst.m * p.lam ** 2)
    return CouplingSet(
        g1=tg1 * p.lam ** (2.0 * (1.0 - p.alpha)),
        g2=tg2 * p.lam ** (2.0 - p.alpha),
        g3=tg3 * p.lam ** 2,
        tg1=tg1, tg2=tg2, tg3=tg3,
        exponents=(2.0 * (p.alpha - 1.0), p.alpha - 2.0, -2.0),
    )


def potential_eval(cs: CouplingSet, E: float, r):
    """V(r) = E + g1 r^{e1} + g2 r^{e2} + g3 r^{-2} for r > 0."""
    import numpy as np
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("potential_eval requires r > 0")
    e1, e2, _ = cs.exponents
    v = E + cs.g1 * r ** e1 + cs.g2 * r ** e2 + cs.g3 * r ** -2.0
    return v if v.ndim else float(v)


class AlphaClass(enum.Enum):
    COULOMB = "Coulomb"
    OSCILLATOR = "Oscillator"
    NOT_CONSTANT_INDEPENDENT = "NotConstantIndependent"


def classify_alpha(alpha: float) -> AlphaClass:
    """Exponent degeneracy test: 2(alpha-1) = 0 or alpha-2 = 0.

    Only these two cases allow the potential to shed its free constants for
    every l at once, so only they are fully solvable independent of the
    transformation constants.
    """
    if abs(alpha - 1.0) <= ALPHA_MATCH_TOL:
        return AlphaClass.COULOMB
    if abs(alpha - 2.0) <= ALPHA_MATCH_TOL:
        return AlphaClass.OSCILLATOR
    return AlphaClass.NOT_CONSTANT_INDEPENDENT


def coulomb_params(l: float, sigma: float,
                   constants: PhysicalConstants = NATURAL,
                   lam: float = 1.0) -> FamilyParams:
    """Case alpha = 1: a = 1/(2 sigma), b = 2/sigma, c = [2 - l(l+1)]/(2 sigma).

    sigma encodes the (negative) energy through sigma^2 = -2 m lam^2 E/hbar^2;
    bound states need sigma < 0.  sigma > 0 is accepted so that the branch
    selector can demonstrate the non-normalizable case.
    """
    if sigma == 0:
        raise ValueError("sigma must be nonzero")
    return FamilyParams(
        alpha=1.0,
        a=1.0 / (2.0 * sigma),
        b=2.0 / sigma,
        c=(2.0 - l * (l + 1.0)) / (2.0 * sigma),
        lam=lam, l=l, constants=constants, sigma=sigma,
    )


def oscillator_params(l: float, omega: float,
                      constants: PhysicalConstants = NATURAL,
                      lam: float = 1.0) -> FamilyParams:
    """Case alpha = 2: a = 1/(2 sigma), b = 1/sigma, c = -l(l+1)/(2 sigma),
    with sigma = -m omega lam^2 / hbar."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    sigma = -constants.m * omega * lam ** 2 / constants.hbar
    return FamilyParams(
        alpha=2.0,
        a=1.0 / (2.0 * sigma),
        b=1.0 / sigma,
        c=-l * (l + 1.0) / (2.0 * sigma),
        lam=lam, l=l, constants=constants, sigma=sigma,
    )


def solve_l_for_zero_energy(alpha: float, a: float, b: float, c: float):
    """Angular momentum that kills the 1/r^2 coupling, or None.

    Solves l(l+1) = A0(A0+1) - [a(2-alpha)(3-alpha) + b alpha - 2b + c]/a for
    l >= 0.  A negative right side admits no real non-negative l.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    A0 = (b - 6.0 * a + 2.0 * a * alpha) / (2.0 * a)
    rhs = A0 * (A0 + 1.0) - (a * (2.0 - alpha) * (3.0 - alpha)
                             + b * alpha - 2.0 * b + c) / a
    if rhs < 0:
        return None
    return (-1.0 + math.sqrt(1.0 + 4.0 * rhs)) / 2.0
