"""Error types shared across the package.

Every error carries a machine-readable ``category`` string (the violated
invariant or schema rule) so batch tooling can match on it without parsing
prose.  When an error surfaces from inside a simulation loop the offending
timestep index is attached as ``timestep``.
"""

from __future__ import annotations


class RackForceError(Exception):
    """Base class for all package errors."""

    def __init__(self, message: str, category: str | None = None):
        super().__init__(message)
        self.message = message
        self.category = category or type(self).__name__
        self.timestep: int | None = None

    def __str__(self) -> str:
        if self.timestep is None:
            return f"{self.category}: {self.message}"
        return f"{self.category}: timestep {self.timestep}: {self.message}"


class ParameterError(RackForceError):
    """A physical or model parameter violates its documented bound."""


class InputError(RackForceError):
    """A file, log, or config payload does not satisfy its schema."""


class EmptyLog(InputError):
    """Log contains no samples."""


class NonMonotonicTime(InputError):
    """Timestamps are not strictly increasing."""


class RateOutOfRange(InputError):
    """Requested resampling rate is outside the supported band."""


class LengthMismatch(InputError):
    """Paired series have different lengths."""


class EmptySeries(InputError):
    """A metric was requested over zero samples."""


class SpeedTooLow(RackForceError):
    """Forward speed is below the slip-angle singularity floor."""


class SlopeOutOfRange(RackForceError):
    """Road slope magnitude exceeds the small-angle validity band."""


class InvalidCamGeometry(ParameterError):
    """Enveloping cam dimensions are not strictly positive."""


class NumericError(RackForceError):
    """A simulation quantity became non-finite."""
