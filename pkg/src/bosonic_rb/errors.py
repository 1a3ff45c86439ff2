"""Exception types shared across the package."""


class BosonicRBError(Exception):
    """Base class for all package-specific errors."""


class SizeCapError(BosonicRBError):
    """A requested computation exceeds a hard size cap (e.g. S_d enumeration)."""


class NumericalConsistencyError(BosonicRBError):
    """A quantity violated a numerical sanity bound (probability range, trace, ...)."""


class FitDiagnosticError(BosonicRBError):
    """Decay fitting aborted because the data failed a sanity diagnostic."""
