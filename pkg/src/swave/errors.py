"""Exception types shared across the toolkit."""


class ScatteringError(Exception):
    """Base class for all toolkit errors."""


class DomainError(ScatteringError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class DistributionalPotentialError(ScatteringError):
    """Pointwise evaluation requested at a delta-shell radius.

    Delta shells are distributions; solvers handle them through
    derivative jump conditions, never through pointwise values.
    """


class IntegrationError(ScatteringError):
    """ODE integration or quadrature failed to reach its tolerance."""


class TailTooLongError(ScatteringError):
    """The potential tail extends beyond what the requested method can
    handle (no admissible match radius, or asymptotic fit windows
    disagree)."""


class IndeterminateConditionError(ScatteringError):
    """A convergence verdict was required but the available data only
    supports 'indeterminate'."""


class PotentialFormatError(ScatteringError):
    """Malformed potential specification file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
