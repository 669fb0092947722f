"""Exception hierarchy shared by every module of the package."""


class PerronBoundError(Exception):
    """Base class for all errors raised by perronbound."""


class InputError(PerronBoundError, ValueError):
    """Malformed or out-of-range arguments."""


class FormatError(InputError):
    """A text payload (graph6 or edge list) could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapabilityError(InputError):
    """The request is valid but beyond what this implementation supports."""


class DomainError(PerronBoundError, ValueError):
    """The input graph lies outside the domain of the operation (e.g. disconnected)."""


class SamplingError(PerronBoundError, RuntimeError):
    """Rejection sampling ran out of attempts."""


class ConvergenceError(PerronBoundError, RuntimeError):
    """An iterative solver failed to reach its tolerance."""

    def __init__(self, message, iterations=None, residual=None):
        self.iterations = iterations
        self.residual = residual
        super().__init__(message)


class ConditioningError(PerronBoundError, ArithmeticError):
    """A shifted system that must be positive definite is not."""
