"""Exception and warning types shared across the library."""

__all__ = [
    "AccuracyError",
    "DegenerateMeasureError",
    "EigenError",
    "TruncationLossWarning",
]


class AccuracyError(RuntimeError):
    """An adaptive computation exhausted its budget before meeting its target.

    The best error estimate achieved is stored in ``estimate``.
    """

    def __init__(self, message: str, estimate: float | None = None):
        super().__init__(message)
        self.estimate = estimate


class DegenerateMeasureError(ValueError):
    """A measure has too few effective points of increase for the request."""


class EigenError(RuntimeError):
    """The tridiagonal eigensolver failed to converge."""


class TruncationLossWarning(UserWarning):
    """A grid analysis/synthesis round trip lost a non-negligible amount of norm."""
