"""Generating level ``k+1`` prospective primes and twins from level ``k``.

Each prospective prime ``p`` of ``S_k`` spawns ``p + m * primorial(k)`` for
``m = 0 .. P_{k+1}-1``.  Exactly one multiplier (the disallowed residue
``m_hat``) makes the child divisible by ``P_{k+1}``; it is dropped.  A twin
pair loses two multipliers, one per member.

Full-level enumeration works on numpy blocks: level ``k`` is produced
subset by subset (``m`` ascending), each subset being the level ``k-1``
stream shifted by ``m * primorial(k-1)`` and filtered, so output is ascending
without sorting and memory stays at one block per recursion depth.
"""
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import CapExceededError, RangeError
from .limits import DEFAULT_ENUM_CAP, check_width
from .sequence import Progression, progression_class
from .wheel import n_prospective_primes, n_prospective_twins, nth_small_prime, primorial

SEED_LEVEL = 2
SEED_PRIMES = (5, 7)
SEED_TWIN = 5

# levels with at most this many items are kept whole in memory
_MATERIALIZE = 1 << 17
_INT64_SAFE = (1 << 62)


@dataclass(frozen=True, order=True)
class ProspectivePrime:
    value: int
    level: int
    is_prime: bool | None = field(default=None, compare=False)

    @property
    def cls(self):
        return progression_class(self.value)

    @property
    def seq_n(self):
        return (self.value - 5) // 6


@dataclass(frozen=True, order=True)
class TwinPair:
    low: int
    level: int

    def __post_init__(self):
        if self.low % 6 != 5:
            raise ValueError(f"twin low member must be 5 mod 6, got {self.low}")

    @property
    def high(self):
        return self.low + 2

    @property
    def seq_n(self):
        return (self.low - 5) // 6

    def __iter__(self):
        return iter((self.low, self.high))


@dataclass(frozen=True)
class DisallowedResidue:
    """``m_hat = (alpha * P - beta) / gamma`` with ``beta = p mod P``, ``gamma = primorial mod P``."""

    m_hat: int
    alpha: int
    beta: int
    gamma: int
    prime: int


def disallowed_m(p_tilde, k):
    """The multiplier ``m`` in ``[0, P_{k+1})`` making ``p_tilde + m*primorial(k)`` divisible by ``P_{k+1}``."""
    q = primorial(k)
    if math.gcd(p_tilde, q) != 1:
        raise ValueError(f"{p_tilde} is not prospective at level {k}")
    prime = nth_small_prime(k + 1)
    beta = p_tilde % prime
    gamma = q % prime
    m_hat = (-beta * pow(gamma, -1, prime)) % prime
    alpha = (m_hat * gamma + beta) // prime
    return DisallowedResidue(m_hat, alpha, beta, gamma, prime)


def extend_prime(p):
    """Yield the ``P_{k+1} - 1`` children of ``p`` at level ``k+1``, ``m`` ascending."""
    k = p.level
    q = primorial(k)
    excluded = disallowed_m(p.value, k)
    for m in range(excluded.prime):
        if m != excluded.m_hat:
            yield ProspectivePrime(check_width(p.value + m * q), k + 1)


def twin_exclusions(t):
    """``(m_hat for the low member, m_hat for the high member)`` when extending ``t``."""
    return disallowed_m(t.low, t.level), disallowed_m(t.high, t.level)


def extend_twin(t):
    """Yield the ``P_{k+1} - 2`` children of twin ``t`` at level ``k+1``, ``m`` ascending."""
    k = t.level
    q = primorial(k)
    lo_ex, hi_ex = twin_exclusions(t)
    skip = {lo_ex.m_hat, hi_ex.m_hat}
    for m in range(lo_ex.prime):
        if m not in skip:
            yield TwinPair(check_width(t.low + m * q), k + 1)


@dataclass(frozen=True)
class GenerationRow:
    """One parent of level ``k-1`` and its ``P_k`` candidate children; the disallowed cell is None."""

    parent: int
    cls: Progression
    cells: tuple


def generation_array(k, cap=DEFAULT_ENUM_CAP):
    """Rows for every prospective prime of ``S_{k-1}``, position-1 parents first, each class ascending."""
    if k <= SEED_LEVEL:
        raise ValueError(f"generation needs k > {SEED_LEVEL}")
    _check_level(k - 1, False, cap)
    q = primorial(k - 1)
    parents = [ProspectivePrime(int(v), k - 1) for b in prospective_blocks(k - 1) for v in b]
    parents.sort(key=lambda p: (p.cls is not Progression.PROG1, p.value))
    rows = []
    for p in parents:
        excluded = disallowed_m(p.value, k - 1)
        cells = tuple(
            None if m == excluded.m_hat else p.value + m * q for m in range(excluded.prime)
        )
        rows.append(GenerationRow(p.value, p.cls, cells))
    return tuple(rows)


# -- whole-level enumeration ------------------------------------------------

def level_size(k, twins=False):
    return n_prospective_twins(k) if twins else n_prospective_primes(k)


def _check_level(k, twins, cap):
    if k < SEED_LEVEL:
        raise ValueError(f"enumeration starts at level {SEED_LEVEL}, got {k}")
    size = level_size(k, twins)
    if cap is not None and size > cap:
        kind = "prospective twins" if twins else "prospective primes"
        raise CapExceededError(f"level {k} has {size} {kind}, over the enumeration cap {cap}")
    if 4 + primorial(k) >= _INT64_SAFE:
        raise RangeError(f"level {k} values exceed the block enumeration range")


def _seed(twins):
    arr = np.array([SEED_TWIN] if twins else SEED_PRIMES, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def subset_blocks(k, twins=False):
    """Yield ``(m, block)`` for level ``k``: ascending int64 arrays inside subset ``S_k^(m)``.

    For twins the arrays hold the low members.  No cap check is done here.
    """
    if k == SEED_LEVEL:
        seed = _seed(twins)
        subset = (seed - 5) // primorial(k - 1)
        for m in np.unique(subset).tolist():
            yield m, seed[subset == m]
        return
    prime = nth_small_prime(k)
    q = primorial(k - 1)
    step = _kernels.extend_twin_block if twins else _kernels.extend_block
    for m in range(prime):
        for chunk in _blocks(k - 1, twins):
            out = step(chunk, m * q, prime)
            if len(out):
                yield m, out


@lru_cache(maxsize=64)
def _materialized(k, twins):
    if k == SEED_LEVEL:
        return _seed(twins)
    arr = np.concatenate([b for _, b in subset_blocks(k, twins)])
    arr.setflags(write=False)
    return arr


def _blocks(k, twins):
    if level_size(k, twins) <= _MATERIALIZE:
        yield _materialized(k, twins)
    else:
        for _, block in subset_blocks(k, twins):
            yield block


def prospective_blocks(k, twins=False, cap=DEFAULT_ENUM_CAP):
    """Ascending int64 blocks of every prospective prime (or twin low) of ``S_k``."""
    _check_level(k, twins, cap)
    return _blocks(k, twins)


def enumerate_prospective_primes(k, cap=DEFAULT_ENUM_CAP, oracle=None):
    """Every integer of ``[5, 4 + primorial(k)]`` coprime to ``primorial(k)``, ascending.

    With an ``oracle`` each item carries ``is_prime``; coprime composites such
    as 121 at level 4 come out with ``is_prime=False``.
    """
    for block in prospective_blocks(k, False, cap):
        flags = oracle.is_prime_array(block) if oracle is not None else None
        for j, v in enumerate(block.tolist()):
            yield ProspectivePrime(v, k, None if flags is None else bool(flags[j]))


def enumerate_prospective_twins(k, cap=DEFAULT_ENUM_CAP):
    """Every pair ``(a, a+2)`` with ``5 <= a <= 2 + primorial(k)`` and both members coprime to ``primorial(k)``."""
    for block in prospective_blocks(k, True, cap):
        for v in block.tolist():
            yield TwinPair(v, k)


def class_counts(k, cap=DEFAULT_ENUM_CAP):
    """``{Progression: count}`` over the level's prospective primes."""
    prog1 = total = 0
    for block in prospective_blocks(k, False, cap):
        total += len(block)
        prog1 += int(np.count_nonzero(block % 6 == 5))
    return {Progression.PROG1: prog1, Progression.PROG2: total - prog1}


# -- family trees -----------------------------------------------------------

@dataclass(frozen=True)
class TwinNode:
    pair: TwinPair
    children: tuple = ()

    def leaves(self):
        if not self.children:
            yield self.pair
        else:
            for child in self.children:
                yield from child.leaves()

    def walk(self, depth=0):
        """Pre-order ``(depth, node)`` traversal."""
        yield depth, self
        for child in self.children:
            yield from child.walk(depth + 1)


def family_tree(seed, to_level, cap=DEFAULT_ENUM_CAP):
    """Descendants of ``seed`` down to ``to_level``; leaves number ``prod (P_i - 2)`` over the added levels."""
    if to_level < seed.level:
        raise ValueError("to_level must not be below the seed level")
    leaves = math.prod(nth_small_prime(i) - 2 for i in range(seed.level + 1, to_level + 1))
    if cap is not None and leaves > cap:
        raise CapExceededError(f"tree would have {leaves} leaves, over the cap {cap}")

    def grow(pair):
        if pair.level == to_level:
            return TwinNode(pair)
        return TwinNode(pair, tuple(grow(c) for c in extend_twin(pair)))

    return grow(seed)


# -- closed-form cascade ------------------------------------------------------

def cascade_value(seed, multipliers):
    """``seed + sum_j m_j * primorial(j-1)`` for ``j = 3, 4, ...``."""
    v = seed
    for j, m in enumerate(multipliers, start=SEED_LEVEL + 1):
        v += m * primorial(j - 1)
    return v


def cascade_valid(seed, multipliers, twin=False):
    """True when no partial sum through stage ``l`` is divisible by ``P_l`` (both members for twins)."""
    v = seed
    for j, m in enumerate(multipliers, start=SEED_LEVEL + 1):
        v += m * primorial(j - 1)
        p = nth_small_prime(j)
        if v % p == 0 or (twin and (v + 2) % p == 0):
            return False
    return True


def enumerate_by_cascade(k, twins=False):
    """All level-``k`` values from the non-iterative cascade, sorted.  Exponential; small ``k`` only."""
    ranges = [range(nth_small_prime(j)) for j in range(SEED_LEVEL + 1, k + 1)]
    seeds = (SEED_TWIN,) if twins else SEED_PRIMES
    out = [
        cascade_value(s, ms)
        for s in seeds
        for ms in itertools.product(*ranges)
        if cascade_valid(s, ms, twins)
    ]
    return sorted(out)


def max_m_chain(k):
    """Take ``m_j = P_j - 1`` at every stage from ``(5, 7)``; returns the pair reached at level ``k``.

    Raises if any stage hits a disallowed multiplier.
    """
    pair = TwinPair(SEED_TWIN, SEED_LEVEL)
    for j in range(SEED_LEVEL + 1, k + 1):
        m = nth_small_prime(j) - 1
        lo_ex, hi_ex = twin_exclusions(pair)
        if m in (lo_ex.m_hat, hi_ex.m_hat):
            raise AssertionError(f"maximal multiplier disallowed at stage {j}")
        pair = TwinPair(check_width(pair.low + m * primorial(j - 1)), j)
    return pair.low, pair.high
