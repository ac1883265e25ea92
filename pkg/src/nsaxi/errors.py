"""Exception taxonomy.

The CLI maps these onto its exit-code contract: usage/config problems are
exit 1, parameters outside the admissible family are exit 2, and numerical
failures are exit 3.
"""


class Error(Exception):
    """Base class for all package errors."""


class ConfigError(Error):
    """Bad configuration file, environment override, or option value."""


class DomainError(Error):
    """Input outside the mathematical domain of an operation."""


class PoleProximityError(DomainError):
    """Evaluation requested closer to a pole than the supported cutoff."""


class DegenerateBranchError(DomainError):
    """Series branch whose endpoint value hits the resonance set."""


class StratumError(DomainError):
    """Sample outside the stratum (or margin) a check requires."""


class NumericalError(Error):
    """A numerical procedure failed to produce a trustworthy result."""


class EscapeError(NumericalError):
    """Trajectory left the a-priori bound for global solutions."""

    def __init__(self, x: float, value: float, message: str = ""):
        self.x = x
        self.value = value
        super().__init__(message or f"solution escaped at x={x!r} with value {value!r}")


class StiffnessError(NumericalError):
    """Adaptive step size underflowed."""


class SeriesDivergenceError(NumericalError):
    """Series coefficients grow beyond the configured cap."""


class AmbiguousEndpointError(NumericalError):
    """Endpoint extrapolation is not close to either admissible limit."""


class ClassificationError(NumericalError):
    """A solver failure made the stratum of a point unclassifiable."""
