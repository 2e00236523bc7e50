"""Exception types raised by pumpsteer."""


class PumpSteerError(Exception):
    """Base class for all numeric failures raised by the package."""


class QuadratureUnconverged(PumpSteerError):
    pass


class CalibrationMismatch(PumpSteerError):
    pass


class EigenNotConverged(PumpSteerError):
    pass


class PairingFailure(PumpSteerError):
    """Symplectic spectrum did not come out in degenerate pairs."""


class IllConditioned(PumpSteerError):
    pass


class UnknownMode(PumpSteerError, KeyError):
    pass


class NumericalDomain(PumpSteerError, ValueError):
    """Input produced a negative radicand, i.e. it is not a physical state."""


class UsageError(Exception):
    """Bad command line flag or config-file key."""


class IoError(Exception):
    """Output could not be written."""

    def __init__(self, path, reason):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path
