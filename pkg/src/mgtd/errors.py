"""Exception types shared across the pipeline.

The CLI maps these onto exit codes: domain errors (everything below) exit
with 2, plain I/O problems with 1.
"""


class PipelineError(Exception):
    """Base class for all domain errors raised by this package."""


class DatasetError(PipelineError):
    """Malformed, duplicate, or invariant-violating input records."""


class UnknownChannelError(PipelineError):
    """A statistical channel name that is neither built in nor registered."""


class CalibrationError(PipelineError):
    """Threshold calibration cannot proceed (e.g. single-class data)."""


class ConfigError(PipelineError):
    """Invalid pipeline configuration or config/table mismatch."""


class EvaluationError(PipelineError):
    """Predictions and gold labels cannot be joined."""
