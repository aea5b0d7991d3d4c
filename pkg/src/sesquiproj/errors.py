"""Shared exception types."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ConvergenceError(RuntimeError):
    """A certified bound or stabilization criterion could not be met."""


class PrecisionError(ValueError):
    """A series or coefficient table does not extend far enough."""


class ToleranceError(RuntimeError):
    """A quadrature routine could not certify the requested tolerance."""
