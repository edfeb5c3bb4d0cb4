"""Exception types raised across the package.

Every failure mode gets its own class so callers can distinguish a
physically meaningful degeneracy (e.g. a singular measurement covariance)
from plain bad input.
"""


class SplitSpinError(Exception):
    """Base class for all package errors."""


class DomainError(SplitSpinError, ValueError):
    """Parameter outside its mathematical domain (e.g. N < 2, |m| > j)."""


class NonFinite(SplitSpinError, ValueError):
    """A matrix or vector contains NaN or infinite entries."""


class DegenerateSecular(SplitSpinError):
    """Secular equation has coinciding poles with nonzero weight.

    The analytic rank-one spectrum is ill-conditioned here; use the dense
    symmetric eigensolver instead.
    """


class SingularCovariance(SplitSpinError):
    """Measurement covariance is singular: the observable set is degenerate."""


class SingularMoment(SplitSpinError):
    """Moment matrix is singular; the estimator covariance diverges."""


class UndefinedAngle(SplitSpinError):
    """Squeezing direction is degenerate (isotropic transverse variance)."""


class VanishingPolarization(SplitSpinError):
    """A commutator denominator vanished; the squeezing ratio diverges."""


class ZeroGeneratorVariance(SplitSpinError):
    """A generator variance vanished; mode-separability normalization undefined."""


class ImpureStateUnsupported(SplitSpinError):
    """Quantum Fisher matrices are only implemented for pure states."""


class ScaleExceeded(SplitSpinError):
    """Brute-force state exceeds the configured exact-simulation limits."""


class DegreeExceeded(SplitSpinError):
    """Operator expression exceeds the supported polynomial degree."""


class TargetUnreachable(SplitSpinError):
    """Requested squeezing target is below the global optimum."""


class UnknownFigure(SplitSpinError, KeyError):
    """Unrecognized figure identifier."""
