"""Closed-form spectra and eigenfunctions of the potential family.

The eigenvalue condition is termination of the operator-exponential series: the
(n+1)th coefficient vanishes exactly when the transformation parameter epsilon
sits at

    eps_n(+-) = -alpha n - (1 - b/a)/2 +- sqrt(Delta)/2,
    Delta = (1 - b/a)^2 - 4c/a,

and the terminated series is an associated Laguerre polynomial under the
argument map x = -rho^alpha/(a alpha).  The eigenfunctions are

    psi(rho) = rho^{(+-sqrt(Delta)-1)/2} exp{rho^alpha/(2 a alpha)}
               L_n^{+-sqrt(Delta)/alpha}(-rho^alpha/(a alpha)),

normalizable only when the exponential factor decays (alpha > 0, a < 0) and the
origin exponent is square-integrable against rho^2 d rho.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DivergentNorm, NegativeDiscriminant, NotNormalizable
from .family import NATURAL, FamilyParams, PhysicalConstants, coulomb_params, oscillator_params

TAIL_FRACTION = 1e-8


def discriminant(p: FamilyParams) -> float:
    """Delta = (1 - b/a)^2 - 4c/a."""
    return (1.0 - p.b / p.a) ** 2 - 4.0 * p.c / p.a


def epsilon_n(p: FamilyParams, n: int, branch: int) -> float:
    """Series-termination value of epsilon for level n on the given branch.

    branch is +1 or -1, selecting the sign in front of sqrt(Delta)/2.
    """
    d = discriminant(p)
    if d < 0:
        raise NegativeDiscriminant(f"Delta = {d} < 0")
    return -p.alpha * n - 0.5 * (1.0 - p.b / p.a) + branch * 0.5 * math.sqrt(d)


@dataclass(frozen=True)
class SpectralLine:
    """One analytic eigenvalue record."""

    n: int
    l: int
    branch: int
    epsilon_n: float
    E: float


def energy_coulomb(n: int, l: int,
                   constants: PhysicalConstants = NATURAL,
                   lam: float = 1.0) -> SpectralLine:
    """Coulomb level E = -m k^2 / (2 hbar^2 (n+l+1)^2), k = e^2/(4 pi eps0).

    The self-consistency loop E -> sigma -> (a, b, c) -> eps_n -> E closes at
    sigma = -m k lam / (hbar^2 (n+l+1)); that sigma is used for the stored
    epsilon so that rebuilding the parameters reproduces g2 = -k exactly.
    """
    if n < 0 or l < 0:
        raise ValueError("n and l must be non-negative")
    k = constants.e2_over_4pieps0
    N = n + l + 1
    E = -constants.m * k ** 2 / (2.0 * constants.hbar ** 2 * N ** 2)
    sigma = -constants.m * k * lam / (constants.hbar ** 2 * N)
    p = coulomb_params(l, sigma, constants, lam)
    return SpectralLine(n=n, l=l, branch=-1, epsilon_n=epsilon_n(p, n, -1), E=E)


def energy_oscillator(n: int, l: int, omega: float,
                      constants: PhysicalConstants = NATURAL) -> SpectralLine:
    """Oscillator level E = hbar omega (2n + l + 3/2)."""
    if n < 0 or l < 0:
        raise ValueError("n and l must be non-negative")
    if omega <= 0:
        raise ValueError("omega must be positive")
    E = constants.hbar * omega * (2.0 * n + l + 1.5)
    p = oscillator_params(l, omega, constants, lam=1.0)
    return SpectralLine(n=n, l=l, branch=-1, epsilon_n=epsilon_n(p, n, -1), E=E)


def laguerre(n: int, k: float, x):
    """Associated Laguerre polynomial L_n^k(x) by forward recurrence.

    Stable for the x >= 0 arguments produced by the bound-state argument map;
    accepts scalar or array x.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + k - x
    for m in range(1, n):
        prev, cur = cur, ((2.0 * m + 1.0 + k - x) * cur - (m + k) * prev) / (m + 1.0)
    return cur if cur.ndim else float(cur)


def branch_select(p: FamilyParams) -> int:
    """Sign of sqrt(Delta) giving an origin-integrable, decaying eigenfunction.

    Origin integrability of rho^{(s sqrt(Delta)-1)/2} against rho^2 d rho needs
    s sqrt(Delta) > -2; decay of exp{rho^alpha/(2 a alpha)} needs alpha > 0 and
    a < 0.  When both signs are integrable the + branch is returned, which is
    the regular rho^l solution in the Coulomb and oscillator cases.
    """
    d = discriminant(p)
    if d < 0:
        raise NegativeDiscriminant(f"Delta = {d} < 0")
    if not (p.alpha > 0 and p.a < 0):
        raise NotNormalizable(
            f"exponential factor does not decay for alpha={p.alpha}, a={p.a}")
    rd = math.sqrt(d)
    ok = [s for s in (+1, -1) if s * rd > -2.0]
    if not ok:
        raise NotNormalizable("no origin-integrable branch")
    return +1 if +1 in ok else -1


@dataclass(frozen=True)
class Wavefunction:
    params: FamilyParams
    n: int
    branch: int
    normalization: float = 1.0


def wavefunction_eval(w: Wavefunction, rho):
    """Evaluate the (scaled) eigenfunction at rho > 0."""
    p = w.params
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("wavefunction_eval requires rho > 0")
    rd = math.sqrt(discriminant(p))
    s = w.branch
    ra = rho ** p.alpha
    val = (rho ** ((s * rd - 1.0) / 2.0)
           * np.exp(ra / (2.0 * p.a * p.alpha))
           * laguerre(w.n, s * rd / p.alpha, -ra / (p.a * p.alpha))
           * w.normalization)
    return val if val.ndim else float(val)


def _simpson(y: np.ndarray, h: float) -> float:
    """Composite Simpson; trailing odd interval handled by the half-pair rule."""
    n = len(y) - 1
    if n < 2:
        return 0.5 * h * float(np.sum(y[:2])) * (1 if n == 1 else 0)
    total = 0.0
    last = n if n % 2 == 0 else n - 1
    total += h / 3.0 * (y[0] + y[last]
                        + 4.0 * np.sum(y[1:last:2]) + 2.0 * np.sum(y[2:last - 1:2]))
    if n % 2 == 1:
        total += h / 12.0 * (-y[-3] + 8.0 * y[-2] + 5.0 * y[-1])
    return float(total)


def normalize(w: Wavefunction, grid) -> Wavefunction:
    """Rescale so that the radial norm integral over the grid equals one.

    The integrand |psi(r/lam)|^2 r^2 is integrated by composite Simpson; the
    beyond-grid tail is estimated from the terminal decay rate and must stay
    below TAIL_FRACTION of the total, otherwise the norm is not trusted.
    """
    r = grid.r()
    h = grid.spacing
    rho = r / w.params.lam
    with np.errstate(over="ignore", invalid="ignore"):
        psi = wavefunction_eval(w, rho)
        integrand = np.abs(psi) ** 2 * r ** 2
        total = _simpson(integrand, h)
    if not np.isfinite(total):
        raise DivergentNorm("norm integral overflowed on the grid")
    if not total > 0:
        raise ValueError("norm integral vanished on the grid")
    # local exponential tail: integrand ~ w_N exp(-kappa (r - r_max))
    w_end, w_prev = integrand[-1], integrand[-2]
    if w_end > 0 and w_prev > 0:
        kappa = math.log(w_prev / w_end) / h
        if kappa <= 0:
            raise DivergentNorm("integrand not decaying at the outer edge")
        tail = w_end / kappa
        if tail > TAIL_FRACTION * (total + tail):
            raise DivergentNorm(
                f"tail estimate {tail:.3e} exceeds {TAIL_FRACTION:.0e} of the norm")
    return replace(w, normalization=w.normalization / math.sqrt(total))
