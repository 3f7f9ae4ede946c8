"""Application exceptions."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from para_sasakian_verifier.models.reports import CheckReport


class AppError(Exception):
    """Base application error."""

    def __init__(self, message: str, code: str = "APP_ERROR"):
        self.message = message
        self.code = code
        super().__init__(message)


class UsageError(AppError):
    """Operation called with arguments it cannot accept."""

    def __init__(self, message: str, code: str = "USAGE_ERROR"):
        super().__init__(message, code)


class UnknownPresetError(UsageError):
    """Preset name not in the curvature catalog."""

    def __init__(self, name: str):
        super().__init__(f"Unknown preset: {name}", "UNKNOWN_PRESET")
        self.name = name


class DimensionError(AppError):
    """Dimension is wrong for the requested operation."""

    def __init__(self, message: str):
        super().__init__(message, "DIMENSION_ERROR")


class InvalidMetricError(AppError):
    """Metric is not symmetric or not invertible."""

    def __init__(self, message: str = "Metric is singular"):
        super().__init__(message, "INVALID_METRIC")


class ManifestParseError(AppError):
    """Manifest text could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}", "PARSE_ERROR")
        self.line = line


class PreconditionError(AppError):
    """An operation was refused because its prerequisite validation failed."""

    def __init__(
        self,
        message: str,
        report: CheckReport | None = None,
        code: str = "PRECONDITION_FAILED",
    ):
        super().__init__(message, code)
        self.report = report


class AdaptedFrameError(PreconditionError):
    """Frame is not adapted to the structure vector field."""

    def __init__(self, message: str):
        super().__init__(message, code="NON_ADAPTED_FRAME")
