"""Exception types shared across the package."""


class WheelError(Exception):
    """Base class for errors raised by twinwheel."""


class RangeError(WheelError, ValueError):
    """A value falls outside the supported integer width or sieve ceiling."""


class CapExceededError(RangeError):
    """An enumeration would yield more items than the configured cap."""
