"""Exception types shared across the package."""


class MetricError(ValueError):
    """Input is not a valid finite metric space (or violates a precondition)."""


class NotQuasihypermetricError(MetricError):
    """The space fails the quasihypermetric test.

    ``witness`` is a mass-zero weight vector with positive energy.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ObtuseConfigurationError(MetricError):
    """A point configuration has an obtuse angle; ``witness`` is ``(i, j, k)``
    with the obtuse angle at ``j``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NumericalFault(RuntimeError):
    """Two routes that must agree mathematically disagreed numerically."""
