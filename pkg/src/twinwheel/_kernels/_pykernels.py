"""Numpy implementations of the hot kernels.

These are the reference versions; ``_ckernels.pyx`` mirrors every signature.
"""
import numpy as np


def sieve_odd_block(lo, count, base_primes):
    """Primality flags for the odd numbers ``lo, lo+2, ..., lo+2*(count-1)``.

    ``lo`` must be odd and ``base_primes`` must hold every odd prime up to
    ``isqrt(lo + 2*count)`` in ascending order (extra primes are harmless).
    Returns a ``uint8`` array with 1 where the number is prime.
    """
    if lo % 2 == 0 or lo < 1:
        raise ValueError("lo must be a positive odd integer")
    flags = np.ones(count, dtype=np.uint8)
    if count <= 0:
        return flags
    hi = lo + 2 * count  # exclusive
    if lo == 1:
        flags[0] = 0
    for p in base_primes:
        p = int(p)
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        flags[(start - lo) // 2::p] = 0
    return flags


def count_twin_flags(flags):
    """Number of adjacent prime flags, i.e. twin pairs inside an odd block."""
    if len(flags) < 2:
        return 0
    return int(np.count_nonzero(flags[:-1] & flags[1:]))


def extend_block(parents, offset, p):
    """``parents + offset`` with the values divisible by ``p`` removed."""
    vals = parents + np.int64(offset)
    return vals[vals % p != 0]


def extend_twin_block(lows, offset, p):
    """Shift twin lows by ``offset``, keeping pairs with neither member divisible by ``p``."""
    vals = lows + np.int64(offset)
    r = vals % p
    return vals[(r != 0) & (r != p - 2)]
