"""Exception types shared across the package."""


class QbError(Exception):
    """Base class for domain errors raised by this package."""


class NegativeDiscriminant(QbError):
    """The branch discriminant (1 - b/a)^2 - 4c/a is negative."""


class NotNormalizable(QbError):
    """No wavefunction branch is both origin-integrable and decaying."""


class DivergentNorm(QbError):
    """Quadrature tail estimate exceeds the accepted fraction of the norm."""


class ComplexRoots(QbError):
    """The indicial quadratic s^2 + beta*s + delta has complex roots."""


class DegenerateCoefficient(QbError):
    """A derived-coefficient formula divides by zero.

    The message names the first coefficient whose denominator vanishes.
    """


class TurningPointOnGrid(QbError):
    """F1 vanishes somewhere on the requested grid."""


class WrongAlpha(QbError):
    """Operation only defined for a specific alpha (e.g. the Morse view)."""


class OracleError(QbError):
    """Base class for numerical-solver failures (CLI exit code 3)."""


class GridTooCoarse(OracleError):
    """Finest and half-resolution ground-state estimates disagree."""


class NoSignChange(OracleError):
    """The shooting determinant does not change sign on the given bracket."""
