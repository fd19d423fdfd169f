"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Degenerate geometry (zero-length or parallel vectors)."""


class StateError(RuntimeError):
    """Illegal state-machine transition (e.g. stepping a finished trial)."""


class DataError(ValueError):
    """Malformed or inconsistent input data."""


class LogIntegrityError(ValueError):
    """Telemetry log failed verification."""

    def __init__(self, message: str, frame_index: int | None = None):
        super().__init__(message)
        self.frame_index = frame_index
