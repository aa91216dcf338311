"""Exception hierarchy shared by all simulation modules."""


class SimError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(SimError):
    """A catalog, vocabulary or config object is unusable as given."""


class ValidationError(SimError):
    """A file failed parsing or validation.

    ``line`` carries a best-effort 1-based line number when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndefinedMetricError(SimError):
    """A metric was requested on inputs where it has no value."""


class FrameOverflowError(SimError):
    """Token count exceeds what the 16-bit frame length prefix can carry."""


class MalformedFrameError(SimError):
    """Decoded bits cannot be parsed as a frame (length prefix inconsistent)."""


class AggregationError(SimError):
    """Agent models with incompatible shapes cannot be aggregated."""


class CurveError(SimError):
    """Invalid curve parameters or a point that is not on the curve."""


class KeyAgreementError(SimError):
    """ECDH was attempted against the point at infinity or an off-curve point."""


class CommitteeTooSmallError(SimError):
    """PBFT needs a committee of at least four nodes."""


class RoundAbortError(SimError):
    """An auction round cannot start (e.g. the image pool is exhausted)."""


class OffloadRefused(SimError):
    """Signal that a station refused a task; the caller falls back to cloud."""


class UsageError(SimError):
    """Bad command-line or API usage (unknown experiment, empty input...)."""
