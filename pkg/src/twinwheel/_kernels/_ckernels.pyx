# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels``; same signatures and results."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


def sieve_odd_block(long long lo, Py_ssize_t count, base_primes):
    if lo % 2 == 0 or lo < 1:
        raise ValueError("lo must be a positive odd integer")
    out = np.ones(count, dtype=np.uint8)
    if count <= 0:
        return out
    cdef uint8_t[::1] flags = out
    cdef int64_t[::1] primes = np.ascontiguousarray(base_primes, dtype=np.int64)
    cdef long long hi = lo + 2 * <long long>count
    cdef long long p, pp, start
    cdef Py_ssize_t i, j, n = primes.shape[0]
    if lo == 1:
        flags[0] = 0
    with nogil:
        for i in range(n):
            p = primes[i]
            pp = p * p
            if pp >= hi:
                break
            start = ((lo + p - 1) // p) * p
            if start < pp:
                start = pp
            if start % 2 == 0:
                start += p
            j = <Py_ssize_t>((start - lo) // 2)
            while j < count:
                flags[j] = 0
                j += p
    return out


def count_twin_flags(flags_in):
    cdef const uint8_t[::1] flags = np.ascontiguousarray(flags_in, dtype=np.uint8)
    cdef Py_ssize_t j, n = flags.shape[0]
    cdef long long total = 0
    with nogil:
        # branch-free so the compiler can vectorise; flags are 0/1
        for j in range(n - 1):
            total += flags[j] & flags[j + 1]
    return int(total)


def extend_block(parents_in, long long offset, long long p):
    cdef const int64_t[::1] parents = np.ascontiguousarray(parents_in, dtype=np.int64)
    cdef Py_ssize_t i, w = 0, n = parents.shape[0]
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef long long v
    with nogil:
        for i in range(n):
            v = parents[i] + offset
            if v % p != 0:
                res[w] = v
                w += 1
    return out[:w]


def extend_twin_block(lows_in, long long offset, long long p):
    cdef const int64_t[::1] lows = np.ascontiguousarray(lows_in, dtype=np.int64)
    cdef Py_ssize_t i, w = 0, n = lows.shape[0]
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] res = out
    cdef long long v, r
    with nogil:
        for i in range(n):
            v = lows[i] + offset
            r = v % p
            if r != 0 and r != p - 2:
                res[w] = v
                w += 1
    return out[:w]
