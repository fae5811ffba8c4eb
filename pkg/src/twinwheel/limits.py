"""Integer-width and size limits.

Values follow unsigned 128-bit semantics even though Python integers are
unbounded: anything that would not fit raises :class:`RangeError` instead of
silently growing. Exact rationals (densities, bounds) are exempt.
"""
from .errors import RangeError

INT_BITS = 128
MAX_VALUE = (1 << INT_BITS) - 1

DEFAULT_ENUM_CAP = 10**8
DEFAULT_SIEVE_CEILING = 10**10
DEFAULT_SEGMENT_SIZE = 1 << 20  # odd entries per sieve segment


def check_width(value, what="value"):
    if value < 0 or value > MAX_VALUE:
        raise RangeError(f"{what} {value} does not fit in {INT_BITS} bits")
    return value
