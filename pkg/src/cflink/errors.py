"""Exception hierarchy shared by every cflink module."""


class CFLinkError(Exception):
    """Base class for all errors raised by cflink."""


class ParameterError(CFLinkError, ValueError):
    """An argument is outside its valid domain."""


class EdgeListError(ParameterError):
    """An edge-list file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DatasetError(CFLinkError):
    """A dataset is unknown, missing on disk, or fails its (N, M) check."""


class NumericalError(CFLinkError, ArithmeticError):
    """A linear-algebra kernel failed or would not converge."""


class DivergenceError(NumericalError):
    """A damped path series does not converge for the requested parameter."""


class ResourceError(CFLinkError):
    """A computation would exceed a configured size cap."""
