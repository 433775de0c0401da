"""Exception and warning types shared across the package."""


class InvalidDegreeError(ValueError):
    """Degree outside the supported range (N >= 2 for most operations)."""


class DimensionMismatchError(ValueError):
    """Vector/matrix dimensions do not agree."""


class NotConjugateReciprocalError(ValueError):
    """Complex coefficients violate the conjugate-reciprocal relation."""


class ImaginaryResidueError(ValueError):
    """Inverse basis map produced a vector with non-negligible imaginary part."""


class OffCircleError(ValueError):
    """A root lies off the unit circle beyond the allowed tolerance."""


class NumericFailure(RuntimeError):
    """An iterative numeric routine failed to converge.

    Carries the best iterate and its residuals so callers can diagnose.
    """

    def __init__(self, message, best=None, residuals=None):
        super().__init__(message)
        self.best = best
        self.residuals = residuals


class ToleranceDisagreement(UserWarning):
    """Primary and cross-check criteria disagree; the primary verdict was kept."""
