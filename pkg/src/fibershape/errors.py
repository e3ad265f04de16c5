"""Exception and warning types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every toolkit-specific error."""


class InvalidSpecError(ToolkitError, ValueError):
    """A component specification violates its physical constraints."""


class InvalidPointError(ToolkitError, ValueError):
    """A calibration point has a nonpositive strain or radius."""


class InsufficientDataError(ToolkitError, ValueError):
    """Too few samples or points to perform the operation."""


class DomainError(ToolkitError, ValueError):
    """An input lies outside the mathematical domain of the operation."""


class SpanMismatchError(ToolkitError, ValueError):
    """Compared curves do not cover a common arc-length span."""


class UndefinedRadiusError(ToolkitError, ValueError):
    """No bent samples in the requested region, so no radius is defined."""


class ConfigError(ToolkitError, ValueError):
    """Configuration input is missing, malformed, or violates unit rules."""


class PipelineError(ToolkitError, RuntimeError):
    """A pipeline stage failed; the message names the stage."""


class CalibrationDomainWarning(UserWarning):
    """Model evaluated outside the strain range it was fitted on."""


class GeometryWarning(UserWarning):
    """Requested geometry is unusual (e.g. an arc longer than a full circle)."""
