"""Exception hierarchy. The CLI maps these onto exit codes."""


class ZakBLTError(Exception):
    """Base class for all library errors."""


class ValidationError(ZakBLTError, ValueError):
    """Malformed input: bad grid alignment, non-power-of-two sizes, etc."""


class HypothesisError(ZakBLTError):
    """A mathematical hypothesis of an operation is violated by the data."""


class NotQuasiPeriodicError(HypothesisError):
    """No argument jump was found, so the grid cannot be a Zak transform."""


class TruncationError(ZakBLTError):
    """A requested radius or frequency lies outside the resolvable window."""


class ResourceError(ZakBLTError):
    """A request would exceed the configured sample cap."""
