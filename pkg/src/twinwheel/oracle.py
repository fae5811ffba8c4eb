"""Segmented sieve of Eratosthenes: primality, pi(N), nth prime, twin counts.

This is the ground truth the wheel model is checked against, so it shares no
code with the wheel enumeration beyond the low-level block sieve kernel.

Numbers up to ``memory_limit`` are kept as an odd-only flag array with block
prefix counts.  Anything larger is counted by streaming segments, and pi
values above ``CHECKPOINT_MIN`` can be persisted in a small checkpoint file.
"""
import logging
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import RangeError
from .limits import DEFAULT_SEGMENT_SIZE, DEFAULT_SIEVE_CEILING

log = logging.getLogger(__name__)

CHECKPOINT_MIN = 10**8
CHECKPOINT_FILE = "pi_checkpoints.tsv"
_PREFIX_BLOCK = 1 << 14


@dataclass(frozen=True)
class SieveSegment:
    lo: int  # first odd number covered
    hi: int  # last odd number covered
    bits: np.ndarray  # bits[j] == 1 iff lo + 2j is prime

    @property
    def prime_count(self):
        return int(np.count_nonzero(self.bits))


@dataclass(frozen=True, order=True)
class PiCheckpoint:
    N: int
    pi_value: int


class CheckpointCache:
    """``N<TAB>pi(N)`` records, one per line, sorted by ``N``."""

    def __init__(self, directory):
        self.path = Path(directory) / CHECKPOINT_FILE
        self._records = {}
        self._load()

    def _load(self):
        if not self.path.exists():
            return
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            if not line.strip():
                continue
            try:
                n_str, pi_str = line.split("\t")
                rec = PiCheckpoint(int(n_str), int(pi_str))
                if rec.N < 0 or rec.pi_value < 0:
                    raise ValueError("negative field")
            except ValueError:
                log.warning("%s:%d: ignoring corrupt checkpoint line %r", self.path, lineno, line)
                continue
            self._records[rec.N] = rec

    def __len__(self):
        return len(self._records)

    def get(self, N):
        rec = self._records.get(N)
        return None if rec is None else rec.pi_value

    def floor(self, N):
        """Largest checkpoint at or below ``N``, or None."""
        best = None
        for rec in self._records.values():
            if rec.N <= N and (best is None or rec.N > best.N):
                best = rec
        return best

    def put(self, N, pi_value):
        if self._records.get(N) == PiCheckpoint(N, pi_value):
            return
        self._records[N] = PiCheckpoint(N, pi_value)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        body = "".join(f"{r.N}\t{r.pi_value}\n" for r in sorted(self._records.values()))
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".pi_", suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(body)
        os.replace(tmp, self.path)


def _small_odd_primes(limit):
    """Odd primes ``<= limit`` by a plain sieve; seeds the segmented sieve."""
    if limit < 3:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p::p] = False
    primes = np.flatnonzero(flags).astype(np.int64)
    return primes[1:]


class PrimeSieve:
    """Exact prime queries up to ``ceiling``.

    ``memory_limit`` bounds the in-memory flag array (one byte per odd
    number); queries above it stream segments of ``segment_size`` odd
    entries.  ``workers > 1`` sieves streamed segments on a thread pool.
    """

    def __init__(
        self,
        ceiling=DEFAULT_SIEVE_CEILING,
        segment_size=DEFAULT_SEGMENT_SIZE,
        cache_dir=None,
        memory_limit=1 << 26,
        workers=1,
    ):
        if segment_size < 16:
            raise ValueError("segment_size too small")
        self.ceiling = int(ceiling)
        self.segment_size = int(segment_size)
        self.memory_limit = int(memory_limit)
        self.workers = max(1, int(workers))
        self.cache = CheckpointCache(cache_dir) if cache_dir is not None else None
        self._flags = np.zeros(0, dtype=np.uint8)  # _flags[j] <-> 2j + 1
        self._prefix = np.zeros(1, dtype=np.int64)
        self._limit = 0  # every number < _limit is covered

    # -- in-memory region -------------------------------------------------

    def _check(self, N, what="N"):
        if N < 0:
            raise RangeError(f"{what} must be non-negative, got {N}")
        if N > self.ceiling:
            raise RangeError(f"{what}={N} exceeds sieve ceiling {self.ceiling}")

    def _grow(self, needed):
        """Cover every number below ``needed`` (capped at ``memory_limit``)."""
        if needed <= self._limit:
            return
        target = max(needed, 2 * self._limit, 1 << 16)
        target = min(target, max(self.memory_limit, needed))
        target += target % 2  # even, so the odd entries are exactly [1, target)
        count = target // 2
        base = _small_odd_primes(math.isqrt(target) + 1)
        parts = [
            seg.bits
            for seg in self._segments(1, count, base)
        ]
        self._flags = np.concatenate(parts) if parts else np.zeros(0, np.uint8)
        self._limit = target
        blocks = np.add.reduceat(
            self._flags.astype(np.int64), np.arange(0, count, _PREFIX_BLOCK)
        )
        self._prefix = np.concatenate(([0], np.cumsum(blocks)))

    def _in_memory(self, N):
        if N < self._limit:
            return True
        if N < self.memory_limit:
            self._grow(N + 1)
            return True
        return False

    def _odd_prime_count_below_index(self, idx):
        """Number of primes among odd entries ``0 .. idx-1``."""
        b, r = divmod(idx, _PREFIX_BLOCK)
        start = b * _PREFIX_BLOCK
        return int(self._prefix[b]) + int(np.count_nonzero(self._flags[start:start + r]))

    # -- streaming --------------------------------------------------------

    def _segments(self, lo, count, base=None):
        """Yield SieveSegments covering ``count`` odd numbers from odd ``lo``."""
        if count <= 0:
            return
        if base is None:
            base = _small_odd_primes(math.isqrt(lo + 2 * count) + 1)
        starts = range(0, count, self.segment_size)

        def work(off):
            n = min(self.segment_size, count - off)
            s = lo + 2 * off
            return SieveSegment(s, s + 2 * (n - 1), _kernels.sieve_odd_block(s, n, base))

        if self.workers == 1:
            for off in starts:
                yield work(off)
        else:
            with ThreadPoolExecutor(self.workers) as pool:
                # bounded look-ahead keeps memory proportional to the worker count
                batch = []
                for off in starts:
                    batch.append(pool.submit(work, off))
                    if len(batch) >= 2 * self.workers:
                        yield batch.pop(0).result()
                for fut in batch:
                    yield fut.result()

    def _stream_odd_primes(self, lo, hi):
        """Count odd primes in ``[lo, hi]``."""
        lo += 1 - lo % 2
        hi -= 1 - hi % 2
        if hi < lo:
            return 0
        return sum(seg.prime_count for seg in self._segments(lo, (hi - lo) // 2 + 1))

    # -- public queries ---------------------------------------------------

    def prime_pi(self, N):
        """Exact number of primes ``<= N``."""
        self._check(N)
        if N < 2:
            return 0
        if self._in_memory(N):
            return self._pi_memory(N)
        if self.cache is not None:
            hit = self.cache.get(N)
            if hit is not None:
                return hit
        start, base_pi = self._best_start(N)
        pi = base_pi + self._stream_odd_primes(start + 1, N)
        if self.cache is not None and N > CHECKPOINT_MIN:
            self.cache.put(N, pi)
        return pi

    def _pi_memory(self, N):
        # odd entry 0 is 1 (flag 0), so this counts odd primes <= N; add 2
        return 1 + self._odd_prime_count_below_index((N - 1) // 2 + 1)

    def _best_start(self, N):
        """A point ``C <= N`` with known pi(C), as close to N as possible."""
        self._grow(self.memory_limit)
        c = self._limit - 1
        best = (c, self._pi_memory(c))
        if self.cache is not None:
            rec = self.cache.floor(N)
            if rec is not None and rec.N > best[0]:
                best = (rec.N, rec.pi_value)
        return best

    def is_prime(self, N):
        self._check(N)
        if N < 2:
            return False
        if N % 2 == 0:
            return N == 2
        if self._in_memory(N):
            return bool(self._flags[(N - 1) // 2])
        root = math.isqrt(N)
        base = self.primes_up_to(root)
        return not bool(np.any(N % base == 0))

    def is_prime_array(self, values):
        """Vectorised :meth:`is_prime` for an integer array."""
        values = np.asarray(values, dtype=np.int64)
        if values.size == 0:
            return np.zeros(0, dtype=bool)
        top = int(values.max())
        if int(values.min()) >= 0 and self._in_memory(top):
            out = np.zeros(values.shape, dtype=bool)
            odd = values % 2 == 1
            out[odd] = self._flags[(values[odd] - 1) // 2].astype(bool)
            out[values == 2] = True
            return out
        return np.array([self.is_prime(int(v)) for v in values], dtype=bool)

    def primes_up_to(self, n):
        """Ascending numpy array of primes ``<= n`` (in-memory range only)."""
        self._check(n)
        if n < 2:
            return np.zeros(0, dtype=np.int64)
        if not self._in_memory(n):
            raise RangeError(f"primes_up_to({n}) exceeds the in-memory limit {self.memory_limit}")
        idx = np.flatnonzero(self._flags[: (n - 1) // 2 + 1]).astype(np.int64)
        return np.concatenate(([2], 2 * idx + 1))

    def nth_prime(self, i):
        """``P_i`` with ``nth_prime(1) == 2``."""
        if i < 1:
            raise ValueError("prime index starts at 1")
        if i == 1:
            return 2
        # p_i < i (ln i + ln ln i) for i >= 6
        est = 15 if i < 6 else int(i * (math.log(i) + math.log(math.log(i)))) + 3
        self._check(est, "nth_prime bound")
        if not self._in_memory(est):
            raise RangeError(f"nth_prime({i}) exceeds the in-memory limit {self.memory_limit}")
        target = i - 1  # odd primes to skip past, the first prime being 2
        b = int(np.searchsorted(self._prefix, target, side="left")) - 1
        start = b * _PREFIX_BLOCK
        need = target - int(self._prefix[b])
        hits = np.flatnonzero(self._flags[start:start + _PREFIX_BLOCK])
        return int(2 * (start + hits[need - 1]) + 1)

    def twin_pairs_between(self, lo, hi):
        """Twin pairs ``(p, p+2)`` with ``lo < p`` and ``p + 2 < hi`` (strict)."""
        if lo >= hi:
            raise ValueError("need lo < hi")
        self._check(hi, "hi")
        p_min, p_max = max(lo + 1, 3), hi - 3
        p_min += 1 - p_min % 2
        if p_max < p_min:
            return 0
        a, b = (p_min - 1) // 2, (p_max - 1) // 2 + 1  # flags a .. b inclusive
        if self._in_memory(p_max + 2):
            return _kernels.count_twin_flags(self._flags[a:b + 1])
        total, carry = 0, 0
        for seg in self._segments(p_min, b - a + 1):
            bits = seg.bits
            total += _kernels.count_twin_flags(bits)
            if carry and bits[0]:
                total += 1
            carry = bits[-1]
        return total
