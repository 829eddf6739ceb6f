"""Exception types raised across the toolkit."""


class AnonAugError(Exception):
    """Base class for all toolkit errors."""


class SchemaError(AnonAugError):
    """Schema/config is malformed or does not match the data."""


class TaxonomyError(AnonAugError):
    """Hierarchy file is malformed or a label lookup failed."""


class AuditError(AnonAugError):
    """Privacy audit requested on data it cannot be computed for."""


class LossError(AnonAugError):
    """Information-loss computation received out-of-contract input."""


class AnonymizationError(AnonAugError):
    """An anonymization run cannot satisfy its preconditions."""


class PromptError(AnonAugError):
    """Prompt rendering or response parsing failed."""


class BackendError(AnonAugError):
    """A generation backend failed to produce a usable batch."""


class PipelineError(AnonAugError):
    """The augment-and-merge pipeline could not complete."""
