"""Exact operator action on real-power monomials and exponential-map series.

Everything here lives on the scale-covariant basis rho^s.  Two operators are
supported, both defined through their action on a single monomial:

* the quadratic-coefficient operator, rho^s -> [a s(s-1) + b s + c] rho^{s-alpha},
  whose exponential generates the bound-state eigenfunction chain;
* the first-order ladder operator, rho^s -> (a s + b) rho^{s+alpha-1}, whose
  exponential generates the second potential family.

``exp_series`` builds sum_k (scale^k / k!) op^k(seed) term by term.  Because each
application multiplies the coefficient by a polynomial in the running exponent,
the series terminates exactly when that polynomial hits a root; detecting the
hit is the quantization mechanism, so the termination test compares the raw
(unscaled) product against its running maximum rather than the k!-damped series
coefficient.  That keeps a genuine algebraic zero distinguishable from ordinary
geometric decay of a convergent, non-terminating series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EXPONENT_MERGE_TOL = 1e-12
TERMINATION_RTOL = 1e-12
DEFAULT_MAX_TERMS = 64


@dataclass(frozen=True)
class MonomialTerm:
    """One term coeff * rho^expo."""

    coeff: float
    expo: float

    def __post_init__(self):
        if not (np.isfinite(self.coeff) and np.isfinite(self.expo)):
            raise ValueError("monomial coefficient and exponent must be finite")


@dataclass(frozen=True)
class OperatorA:
    """rho^s -> [a s(s-1) + b s + c] rho^{s - alpha}."""

    a: float
    b: float
    c: float
    alpha: float

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("operator requires a != 0")

    def quadratic(self, s: float) -> float:
        return self.a * s * (s - 1.0) + self.b * s + self.c

    def factor(self, s: float) -> float:
        return self.quadratic(s)

    @property
    def shift(self) -> float:
        return -self.alpha


@dataclass(frozen=True)
class OperatorO:
    """rho^s -> (a s + b) rho^{s + alpha - 1}."""

    a: float
    b: float
    alpha: float

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("operator requires a != 0")

    def factor(self, s: float) -> float:
        return self.a * s + self.b

    @property
    def shift(self) -> float:
        return self.alpha - 1.0


def apply_A(op: OperatorA, t: MonomialTerm) -> MonomialTerm:
    """Apply the quadratic-coefficient operator to a single monomial."""
    return MonomialTerm(t.coeff * op.quadratic(t.expo), t.expo - op.alpha)


def apply_O(op: OperatorO, t: MonomialTerm) -> MonomialTerm:
    """Apply the first-order ladder operator to a single monomial."""
    return MonomialTerm(t.coeff * (op.a * t.expo + op.b), t.expo + op.alpha - 1.0)


@dataclass(frozen=True)
class WeightedPowerSeries:
    """Finite sum of real-exponent monomials, exponents strictly increasing.

    ``terminated`` is set when the generating recursion produced an exactly
    vanishing coefficient (a polynomial eigenfunction); ``truncated`` when the
    term budget ran out first, i.e. the series is genuinely non-terminating at
    the requested length.
    """

    terms: tuple[MonomialTerm, ...]
    terminated: bool = False
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.terms)


def _normalized(terms) -> tuple[MonomialTerm, ...]:
    # merge exponents within EXPONENT_MERGE_TOL, drop exact-zero coefficients
    srt = sorted(terms, key=lambda t: t.expo)
    out: list[MonomialTerm] = []
    for t in srt:
        if out and abs(t.expo - out[-1].expo) <= EXPONENT_MERGE_TOL:
            out[-1] = MonomialTerm(out[-1].coeff + t.coeff, out[-1].expo)
        else:
            out.append(t)
    return tuple(t for t in out if t.coeff != 0.0)


def make_series(terms, terminated=False, truncated=False) -> WeightedPowerSeries:
    return WeightedPowerSeries(_normalized(terms), terminated, truncated)


def exp_series(op, scale: float, seed: MonomialTerm,
               max_terms: int = DEFAULT_MAX_TERMS) -> WeightedPowerSeries:
    """Expand exp(scale * op) applied to ``seed``.

    Parameters
    ----------
    op : OperatorA or OperatorO
    scale : prefactor inside the exponential (1/alpha or -gamma in practice)
    seed : starting monomial
    max_terms : series length budget; the k = max_terms term is never formed

    Returns the accumulated series.  ``terminated`` is set when some op^k(seed)
    coefficient vanishes (relative threshold TERMINATION_RTOL against the
    running maximum of the unscaled products); ``truncated`` is set when the
    budget is exhausted without termination.
    """
    if max_terms < 1:
        raise ValueError("max_terms must be >= 1")
    apply = apply_A if isinstance(op, OperatorA) else apply_O

    terms = [seed]
    raw = seed            # op^k(seed), no scale, no factorial
    running = abs(seed.coeff)
    weight = 1.0          # scale^k / k!
    terminated = False
    for k in range(1, max_terms):
        raw = apply(op, raw)
        if abs(raw.coeff) <= TERMINATION_RTOL * running:
            terminated = True
            break
        running = max(running, abs(raw.coeff))
        weight *= scale / k
        terms.append(MonomialTerm(weight * raw.coeff, raw.expo))
    return make_series(terms, terminated=terminated,
                       truncated=not terminated and len(terms) == max_terms)


def series_eval(s: WeightedPowerSeries, rho):
    """Evaluate the series at rho > 0, summing in ascending-exponent order."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("series_eval requires rho > 0")
    total = np.zeros_like(rho)
    for t in s.terms:
        total = total + t.coeff * rho ** t.expo
    return total if total.ndim else float(total)
