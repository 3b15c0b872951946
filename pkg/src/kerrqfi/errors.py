"""Exception hierarchy for kerrqfi."""


class KerrQfiError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(KerrQfiError, ValueError):
    pass


class DomainError(KerrQfiError, ValueError):
    """A parameter lies outside the domain of a formula."""


class DimensionMismatchError(KerrQfiError, ValueError):
    pass


class NotHermitianError(KerrQfiError, ValueError):
    pass


class TruncationError(KerrQfiError):
    """Probability mass leaks past the Fock-space cutoff."""

    def __init__(self, message, leakage=None, dim=None):
        super().__init__(message)
        self.leakage = leakage
        self.dim = dim


class TruncationSensitivityError(TruncationError):
    """Result changes when the cutoff is enlarged."""


class NumericalInconsistencyError(KerrQfiError):
    """A physical bound is violated beyond floating-point tolerance."""


class ConfigError(KerrQfiError):
    """Malformed sweep configuration or command line."""


class PlotError(KerrQfiError):
    pass
