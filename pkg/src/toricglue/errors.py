"""Exception hierarchy shared by all toricglue modules."""


class ToricGlueError(Exception):
    """Base class for every error raised by toricglue."""


class DimensionError(ToricGlueError, ValueError):
    """Shapes of vectors/matrices do not agree, or an index is out of range."""


class ValidationError(ToricGlueError, ValueError):
    """An input object violates a structural invariant."""


class PartitionError(ValidationError):
    pass


class HypothesisError(ToricGlueError, ValueError):
    """A formula was evaluated outside the hypothesis under which it holds."""


class InadmissiblePrimeError(ToricGlueError, ValueError):
    pass


class SizeLimitError(ToricGlueError, ValueError):
    pass


class BoundExceededError(ToricGlueError, RuntimeError):
    """A brute-force search hit its configured bound without deciding."""
