"""Prospective primes and twin primes on primorial wheels, checked against a sieve."""
from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import CapExceededError, RangeError, WheelError

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "CapExceededError", "RangeError", "WheelError", "__version__"]
