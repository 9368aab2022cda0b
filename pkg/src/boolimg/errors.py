"""Exception types shared across the package."""


class FormatError(ValueError):
    """Malformed input file; the message names the offending entry."""


class BoundExceeded(ValueError):
    """An exhaustive enumeration would exceed its configured bound."""


class PostconditionError(RuntimeError):
    """A construction produced output violating a guaranteed property."""
