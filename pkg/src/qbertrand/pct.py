"""Point-canonical-transformation image of the solvable family.

A change of variable rho -> f(rho) carries the Euler-operator eigenvalue
problem into Schroedinger form with a potential built from f and its first
three derivatives.  The generic display contains the quantization energy as an
additive constant; with f(rho) = e^rho all constant terms cancel against it
and the potential collapses to two exponentials plus a -2 e^{-rho} term and
the centrifugal barrier.  That special case is conditionally exactly solvable:
l must be fixed, and the energy no longer depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import WrongAlpha
from .family import FamilyParams
from .spectrum import discriminant, laguerre

ALPHA_MORSE_TOL = 1e-12


@dataclass(frozen=True)
class PctMap:
    """Change of variable with analytically supplied derivatives.

    Numerical differentiation is not accepted: the potential involves the
    third derivative of f and the residual targets leave no noise budget.
    All four callables take scalar-or-array rho and broadcast.
    """

    f: Callable
    df: Callable
    d2f: Callable
    d3f: Callable


def identity_map() -> PctMap:
    return PctMap(f=lambda r: np.asarray(r, dtype=float) + 0.0,
                  df=lambda r: np.ones_like(np.asarray(r, dtype=float)),
                  d2f=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
                  d3f=lambda r: np.zeros_like(np.asarray(r, dtype=float)))


def exponential_map() -> PctMap:
    return PctMap(f=np.exp, df=np.exp, d2f=np.exp, d3f=np.exp)


def affine_map(scale: float, offset: float = 0.0) -> PctMap:
    """f(rho) = scale*rho + offset; scale must be positive so f is increasing."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    return PctMap(f=lambda r: scale * np.asarray(r, dtype=float) + offset,
                  df=lambda r: np.full_like(np.asarray(r, dtype=float), scale),
                  d2f=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
                  d3f=lambda r: np.zeros_like(np.asarray(r, dtype=float)))


def _c0(p: FamilyParams) -> float:
    h = p.b / (2.0 * p.a)
    return h * (h - 1.0) - p.c / p.a


def _unit(p: FamilyParams) -> float:
    c = p.constants
    return c.hbar ** 2 / (2.0 * c.m * p.lam ** 2)


def pct_energy(p: FamilyParams) -> float:
    """E = (hbar^2/2m lam^2) [alpha - 17/4 - (b/2a)(b/2a - 1) + c/a].

    This is the energy for which the constant terms of the transformed
    potential cancel; it carries no l dependence at all.
    """
    return _unit(p) * (p.alpha - 17.0 / 4.0 - _c0(p))


def pct_potential(p: FamilyParams, pmap: PctMap, rho):
    """Transformed potential for an arbitrary map, term by term.

    The quantization energy pct_energy is folded in as its additive constant,
    so for the exponential map this agrees pointwise with exp_map_potential.
    """
    rho = np.asarray(rho, dtype=float)
    f = np.asarray(pmap.f(rho), dtype=float)
    df = np.asarray(pmap.df(rho), dtype=float)
    d2f = np.asarray(pmap.d2f(rho), dtype=float)
    d3f = np.asarray(pmap.d3f(rho), dtype=float)
    a, b, al, eps = p.a, p.b, p.alpha, p.epsilon
    c0 = _c0(p)
    t = (al - 17.0 / 4.0 - c0) + 0.0 * rho
    t = t + (df * f ** (al - 1.0)) ** 2 / (4.0 * a ** 2)
    t = t + (b + a * (al - 1.0 - 2.0 * eps)) * df ** 2 * f ** (al - 2.0) / (2.0 * a ** 2)
    t = t + c0 * (df / f) ** 2
    cf = p.l * (p.l + 1.0)
    if cf != 0.0:
        t = t - cf / rho ** 2
    t = t + 0.75 * (d2f / f) ** 2
    t = t - 0.5 * d3f / df
    t = t - 2.0 * d2f / (f * df)
    t = t + (2.0 - al) * df * d2f / f ** 2
    t = t + 2.0 * (d2f / df) ** 2
    out = _unit(p) * t
    return out if out.ndim else float(out)


def exp_map_potential(p: FamilyParams, rho):
    """Potential of the exponential change of variable, in closed form:

    (2m lam^2/hbar^2) V = e^{2 alpha rho}/(4a^2)
                          + [b + a(alpha - 1 - 2 eps)] e^{alpha rho}/(2a^2)
                          - 2 e^{-rho} - l(l+1)/rho^2.
    """
    rho = np.asarray(rho, dtype=float)
    a, b, al, eps = p.a, p.b, p.alpha, p.epsilon
    t = (np.exp(2.0 * al * rho) / (4.0 * a ** 2)
         + (b + a * (al - 1.0 - 2.0 * eps)) * np.exp(al * rho) / (2.0 * a ** 2)
         - 2.0 * np.exp(-rho))
    cf = p.l * (p.l + 1.0)
    if cf != 0.0:
        t = t - cf / rho ** 2
    out = _unit(p) * t
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class PctSolution:
    """Level-n solution of the exponential-map potential at its fixed l."""

    params: FamilyParams
    l_fixed: float
    E: float
    n: int
    branch: int


def pct_solution(p: FamilyParams, n: int, branch: int) -> PctSolution:
    if n < 0:
        raise ValueError("n must be >= 0")
    if branch not in (+1, -1):
        raise ValueError("branch must be +1 or -1")
    return PctSolution(params=p, l_fixed=p.l, E=pct_energy(p), n=n, branch=branch)


def pct_wavefunction(sol: PctSolution, rho):
    """Unnormalized eigenfunction of the exponential-map potential:

    psi = (1/rho) f^{(s sqrt(Delta)+1)/2} exp{f^alpha/(2 a alpha)}
          L_n^{s sqrt(Delta)/alpha}(-f^alpha/(a alpha)),   f = e^rho.
    """
    p = sol.params
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("pct_wavefunction requires rho > 0")
    rd = np.sqrt(discriminant(p))
    s = sol.branch
    f = np.exp(rho)
    fa = f ** p.alpha
    val = (f ** ((s * rd + 1.0) / 2.0) / rho
           * np.exp(fa / (2.0 * p.a * p.alpha))
           * laguerre(sol.n, s * rd / p.alpha, -fa / (p.a * p.alpha)))
    return val if val.ndim else float(val)


def morse_view(p: FamilyParams):
    """Two-exponential coefficients of the alpha = -1 specialization.

    Returns (coefficient of e^{-2 rho}, coefficient of e^{-rho}) of the
    exp-map display in its own (2m lam^2/hbar^2) V normalization; the second
    entry absorbs the universal -2 e^{-rho} term.
    """
    if abs(p.alpha + 1.0) > ALPHA_MORSE_TOL:
        raise WrongAlpha(f"Morse form needs alpha = -1, got {p.alpha}")
    a, b, eps = p.a, p.b, p.epsilon
    return (1.0 / (4.0 * a ** 2),
            (b + a * (-2.0 - 2.0 * eps)) / (2.0 * a ** 2) - 2.0)
