"""Exception types shared by every module."""


class ParameterError(ValueError):
    """An argument violates an operation's preconditions."""


class ResourceError(RuntimeError):
    """A computation would exceed a configured size cap."""
