"""Exception types shared across the pipeline."""


class ValidationError(ValueError):
    """Rejected parameters or malformed input files."""


class GenerationError(RuntimeError):
    """The construction failed for this parameter/seed combination."""
