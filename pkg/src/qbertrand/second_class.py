"""Second potential family, generated from (D^2 + beta D + delta) eta = 0.

The chain runs eta -> chi = exp(-gamma O) eta -> psi = F1 S chi, where O is
the first-order ladder operator and S solves a first-order ODE in closed
log-derivative form.  The potential picks up rational structure in
t = rho^{alpha-1} through the derived coefficients A1..D3; unlike the first
family it cannot shed its constants for any alpha, which is what
``constant_independence_report`` measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import MonomialTerm, OperatorO, WeightedPowerSeries, exp_series
from .errors import ComplexRoots, DegenerateCoefficient, TurningPointOnGrid
from .family import PhysicalConstants


@dataclass(frozen=True)
class SecondClassParams:
    """Inputs of the second chain; (alpha-1)*gamma*a must not vanish."""

    alpha: float
    beta: float
    delta: float
    gamma: float
    a: float
    b: float
    l: float = 0.0
    lam: float = 1.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self):
        if (self.alpha - 1.0) * self.gamma * self.a == 0.0:
            raise ValueError("(alpha - 1) * gamma * a must be nonzero")
        if self.lam <= 0:
            raise ValueError("lam must be positive")
        if self.l < 0:
            raise ValueError("l must be >= 0")


@dataclass(frozen=True)
class DerivedCoefficients:
    A1: float
    A2: float
    B1: float
    B2: float
    B3: float
    C1: float
    C2: float
    C3: float
    D1: float
    D2: float
    D3: float


def derived_coeffs(p: SecondClassParams) -> DerivedCoefficients:
    """The eleven printed coefficients, evaluated in dependency order.

    Division by an exactly-zero denominator raises DegenerateCoefficient
    naming the first coefficient that cannot be formed.
    """
    a, b, al, ga, be = p.a, p.b, p.alpha, p.gamma, p.beta
    inv_a2 = (al - 1.0) * ga * a
    if inv_a2 == 0.0:
        raise DegenerateCoefficient("A2")
    A2 = 1.0 / inv_a2
    A1 = A2 ** -2.0
    B1 = (al * a + 2.0 * b) / (a * A2 ** 2)
    if B1 == 0.0:
        raise DegenerateCoefficient("B2")
    B2 = (2.0 * b + a * (3.0 + be - ga)) / (2.0 * a * A2 * B1)
    B3 = 1.0 + be - B1 * B2 ** 2
    C1 = b * (a * al - a + b) / (a ** 2 * A2 ** 2)
    if C1 == 0.0:
        raise DegenerateCoefficient("C2")
    C2 = b * (be - ga + 1.0) / (2.0 * a * A2 * C1)
    if b == 0.0:
        raise DegenerateCoefficient("C3")
    C3 = -C1 * C2 ** 2 / b
    D1 = (2.0 * b - 3.0 * al * a) / (a * A2 ** 2)
    if D1 == 0.0:
        raise DegenerateCoefficient("D2")
    D2 = (2.0 * b + a * (be - ga - 4.0 * al - 1.0)) / (2.0 * A2 * D1)
    D3 = 1.0 + be - 4.0 / D1 - D1 * D2 ** 2
    return DerivedCoefficients(A1, A2, B1, B2, B3, C1, C2, C3, D1, D2, D3)


def eta_bar_exponents(p: SecondClassParams):
    """Roots of the indicial quadratic s^2 + beta s + delta, (plus, minus)."""
    disc = p.beta ** 2 - 4.0 * p.delta
    if disc < 0:
        raise ComplexRoots(f"beta^2 - 4 delta = {disc} < 0")
    rd = math.sqrt(disc)
    return ((-p.beta + rd) / 2.0, (-p.beta - rd) / 2.0)


def F_functions(dc: DerivedCoefficients, p: SecondClassParams, rho):
    """(F1, F2, F3) at rho, with t = rho^{alpha-1}:

    F1 = A1 rho^2 (t + A2)^2,  F2 = B1 rho (t + B2)^2 + B3,
    F3 = C1 (t + C2)^2 + C3.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("F_functions requires rho > 0")
    t = rho ** (p.alpha - 1.0)
    f1 = dc.A1 * rho ** 2 * (t + dc.A2) ** 2
    f2 = dc.B1 * rho * (t + dc.B2) ** 2 + dc.B3
    f3 = dc.C1 * (t + dc.C2) ** 2 + dc.C3
    if f1.ndim:
        return f1, f2, f3
    return float(f1), float(f2), float(f3)


def _f1_prime(dc: DerivedCoefficients, p: SecondClassParams, rho):
    # d/drho of A1 rho^2 (t+A2)^2 with t' = (alpha-1) t / rho
    t = rho ** (p.alpha - 1.0)
    return 2.0 * dc.A1 * rho * (t + dc.A2) * (p.alpha * t + dc.A2)


def s_factor(dc: DerivedCoefficients, p: SecondClassParams, grid) -> np.ndarray:
    """S(rho) sampled on the grid, from S'/S = (F2 - 2 F1')/(2 F1) - 1/rho.

    The log-derivative is integrated interval by interval with 5-point
    Gauss-Legendre quadrature and gauged so that S at the middle grid node is
    exactly one.  F1 = 0 anywhere on the grid is a turning point of the
    transformed equation and aborts the sampling.
    """
    r = grid.r()
    t = r ** (p.alpha - 1.0)
    theta = t + dc.A2
    if np.any(theta == 0.0) or np.any(theta[:-1] * theta[1:] < 0.0):
        raise TurningPointOnGrid("rho^(alpha-1) + A2 changes sign on the grid")

    def g(x):
        f1 = dc.A1 * x ** 2 * (x ** (p.alpha - 1.0) + dc.A2) ** 2
        f2 = dc.B1 * x * (x ** (p.alpha - 1.0) + dc.B2) ** 2 + dc.B3
        return (f2 - 2.0 * _f1_prime(dc, p, x)) / (2.0 * f1) - 1.0 / x

    nodes, weights = np.polynomial.legendre.leggauss(5)
    half = grid.spacing / 2.0
    mids = (r[:-1] + r[1:]) / 2.0
    samples = g(mids[:, None] + half * nodes[None, :])
    increments = half * samples @ weights
    log_s = np.concatenate(([0.0], np.cumsum(increments)))
    log_s -= log_s[len(r) // 2]
    return np.exp(log_s)


def second_potential(dc: DerivedCoefficients, p: SecondClassParams, rho):
    """The five-term potential display (already net of its energy constant).

    With t = rho^{alpha-1}:

        [B1 rho (t+B2)^2 + B3][D1 rho (t+D2)^2 + D3] / (4 A1^2 rho^4 (t+A2)^4)
      + D1 (t+D2)[(2 alpha - 1) t + D2] / (A1 rho^2 (t+A2)^2)
      + (8/rho^2) ((alpha t + A2)/(t + A2))^2
                  [1/rho + (alpha-1)/(t+A2) + alpha(alpha-1)/(alpha t + A2)]
      - [C1 (t+A2)^2 + C3 + delta] / (A1 rho^2 (t+A2)^2)
      - l(l+1)/rho^2,

    all in units of hbar^2/(2 m lam^2).
    """
    rho = np.asarray(rho, dtype=float)
    t = rho ** (p.alpha - 1.0)
    al = p.alpha
    ta = t + dc.A2
    v = ((dc.B1 * rho * (t + dc.B2) ** 2 + dc.B3)
         * (dc.D1 * rho * (t + dc.D2) ** 2 + dc.D3)
         / (4.0 * dc.A1 ** 2 * rho ** 4 * ta ** 4))
    v = v + (dc.D1 * (t + dc.D2) * ((2.0 * al - 1.0) * t + dc.D2)
             / (dc.A1 * rho ** 2 * ta ** 2))
    v = v + (8.0 / rho ** 2) * ((al * t + dc.A2) / ta) ** 2 * (
        1.0 / rho + (al - 1.0) / ta + al * (al - 1.0) / (al * t + dc.A2))
    v = v - (dc.C1 * ta ** 2 + dc.C3 + p.delta) / (dc.A1 * rho ** 2 * ta ** 2)
    cf = p.l * (p.l + 1.0)
    if cf != 0.0:
        v = v - cf / rho ** 2
    c = p.constants
    out = c.hbar ** 2 / (2.0 * c.m * p.lam ** 2) * v
    return out if out.ndim else float(out)


def second_wavefunction_series(p: SecondClassParams, s_root: float,
                               truncation: int) -> WeightedPowerSeries:
    """chi = exp(-gamma O) rho^{s_root} as a weighted power series.

    The k-th coefficient carries the product prod_{j<k} (a(s + j(alpha-1)) + b)
    times (-gamma)^k/k!; a vanishing factor terminates the series exactly and
    is flagged as such on the result.
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    op = OperatorO(p.a, p.b, p.alpha)
    return exp_series(op, -p.gamma, MonomialTerm(1.0, s_root), max_terms=truncation)


def _display_no_centrifugal(dc, p, rho):
    # tilde-units display with the centrifugal term stripped
    c = p.constants
    unit = c.hbar ** 2 / (2.0 * c.m * p.lam ** 2)
    v = np.asarray(second_potential(dc, p, rho), dtype=float) / unit
    cf = p.l * (p.l + 1.0)
    if cf != 0.0:
        v = v + cf / rho ** 2
    return v


def _fit_const_plus_inverse_square(rho, x):
    design = np.column_stack([np.ones_like(rho), rho ** -2.0])
    coef, *_ = np.linalg.lstsq(design, x, rcond=None)
    resid = x - design @ coef
    return coef[0], coef[1], resid


def _draw_params(rng, template: SecondClassParams, alpha: float) -> SecondClassParams:
    for _ in range(200):
        def jitter(v):
            base = v if v != 0.0 else 1.0
            return base * rng.uniform(0.5, 2.0)
        cand = SecondClassParams(
            alpha=alpha, beta=jitter(template.beta), delta=jitter(template.delta),
            gamma=jitter(template.gamma), a=jitter(template.a), b=jitter(template.b),
            l=template.l, lam=template.lam, constants=template.constants)
        try:
            dc = derived_coeffs(cand)
        except DegenerateCoefficient:
            continue
        if min(abs(dc.B1), abs(dc.C1), abs(dc.D1)) > 1e-6:
            return cand
    raise RuntimeError("could not draw non-degenerate parameters")


def constant_independence_report(alpha_grid, template: SecondClassParams,
                                 seed: int = 0, n_draws: int = 16) -> dict:
    """Measure whether the potential reduces to constant + centrifugal form.

    For each alpha, parameters are redrawn around the template and the
    centrifugal-stripped display is fitted to kappa + c2 rho^{-2} on a
    near-origin window [1e-6, 1e-4] and a far window [1e4, 1e6].  An alpha
    counts as constant-independent only if every draw fits both windows to
    relative 1e-6 with matching constants; the report records the worst
    misfit, the measured log-log slopes of the surviving (unfitted) parts,
    and, for a zero-energy state, the shifted angular momentum l' with
    l'(l'+1) = l(l+1) - c2 that would absorb the rho^{-2} weight at each end
    (None when no real l' >= 0 exists).

    This is a numerical scan of the printed potential over sampled parameters,
    not a nonexistence proof.
    """
    alphas = list(alpha_grid)
    if not alphas:
        raise ValueError("alpha_grid must be non-empty")
    for al in alphas:
        if abs(al - 1.0) <= 1e-9:
            raise ValueError("alpha = 1 is outside this family (A2 undefined)")
    rng = np.random.default_rng(seed)
    lo = np.geomspace(1e-6, 1e-4, 25)
    hi = np.geomspace(1e4, 1e6, 25)
    entries = []
    for al in alphas:
        worst = 0.0
        all_fit = True
        slopes_lo, slopes_hi = [], []
        shift_lo = shift_hi = None
        for d in range(n_draws):
            cand = _draw_params(rng, template, al)
            dc = derived_coeffs(cand)
            fits_both = True
            kappas = []
            for end, rho, slopes in ((0, lo, slopes_lo), (1, hi, slopes_hi)):
                with np.errstate(all="ignore"):
                    x = _display_no_centrifugal(dc, cand, rho)
                kappa, c2, resid = _fit_const_plus_inverse_square(rho, x)
                resid = np.nan_to_num(np.abs(resid), nan=np.inf)
                scale = max(1.0, float(np.nanmax(np.abs(x))))
                misfit = float(np.max(resid)) / scale
                worst = max(worst, misfit)
                if misfit > 1e-6:
                    fits_both = False
                kappas.append(kappa)
                # dominant surviving exponent over the window; the display has
                # no additive constant at either end, so the raw magnitude
                # carries the leading power directly
                dev = np.abs(x)
                keep = np.isfinite(dev) & (dev > 1e-300)
                if np.count_nonzero(keep) >= 3:
                    slope = np.polyfit(np.log(rho[keep]), np.log(dev[keep]), 1)[0]
                    slopes.append(float(slope))
                if d == 0:
                    rhs = cand.l * (cand.l + 1.0) - c2
                    val = None
                    if 1.0 + 4.0 * rhs >= 0.0:
                        lp = (-1.0 + math.sqrt(1.0 + 4.0 * rhs)) / 2.0
                        if lp >= 0.0:
                            val = lp
                    if end == 0:
                        shift_lo = val
                    else:
                        shift_hi = val
            if fits_both and abs(kappas[0] - kappas[1]) > 1e-6 * max(1.0, abs(kappas[0])):
                fits_both = False
            if not fits_both:
                all_fit = False
        entries.append({
            "alpha": float(al),
            "constant_independent": bool(all_fit),
            "n_draws": int(n_draws),
            "max_relative_misfit": float(worst),
            "small_rho_slope": float(np.median(slopes_lo)) if slopes_lo else None,
            "large_rho_slope": float(np.median(slopes_hi)) if slopes_hi else None,
            "zero_energy_l_shift": {"small_end": shift_lo, "large_end": shift_hi},
        })
    return {
        "alphas": [float(al) for al in alphas],
        "entries": entries,
        "negative_for_all": all(not e["constant_independent"] for e in entries),
    }
