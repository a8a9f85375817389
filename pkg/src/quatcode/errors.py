"""Exception types shared across the package."""


class QuatcodeError(Exception):
    """Base class for all errors raised by quatcode."""


class InvalidArgument(QuatcodeError, ValueError):
    """An argument is outside the domain of the operation."""


class InvalidTower(InvalidArgument):
    """Two fields do not sit in a subfield relation."""


class ResourceLimit(QuatcodeError, RuntimeError):
    """An exhaustive computation would exceed the configured budget."""
