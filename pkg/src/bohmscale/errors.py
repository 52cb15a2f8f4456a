"""Exception hierarchy.

Every error carries a machine-readable ``kind`` plus optional ``stage`` and
``tau`` so the CLI can emit a structured error object.
"""

from __future__ import annotations


class BohmscaleError(ValueError):
    kind = "error"

    def __init__(self, message: str, *, stage: str | None = None, tau: int | None = None):
        super().__init__(message)
        self.message = message
        self.stage = stage
        self.tau = tau

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": self.message, "stage": self.stage, "tau": self.tau}


class InputFileError(BohmscaleError):
    kind = "io"


class DataError(BohmscaleError):
    kind = "data"


class InsufficientDataError(DataError):
    kind = "insufficient_data"


class DegenerateDistributionError(BohmscaleError):
    kind = "degenerate_distribution"


class InsufficientSampleError(BohmscaleError):
    kind = "insufficient_sample"


class GridError(BohmscaleError):
    kind = "grid"


class TailResolutionError(BohmscaleError):
    kind = "insufficient_tail_resolution"


class InsufficientScalesError(BohmscaleError):
    kind = "insufficient_scales"


class FitError(BohmscaleError):
    kind = "fit"


class EmbeddingError(BohmscaleError):
    kind = "embedding"


class ConfigError(BohmscaleError):
    kind = "config"
