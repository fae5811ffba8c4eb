"""Wheel levels ``S_k = [5, 4 + P_1 P_2 ... P_k]`` and their exact counts.

A level is one full period of the pattern of small prime factors.  The
pattern itself is never materialised: "coprime to every ``P <= P_k``" is a
single gcd against the primorial.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import RangeError
from .limits import MAX_VALUE


@lru_cache(maxsize=None)
def _primes_below(bound):
    flags = bytearray([1]) * bound
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound - 1) + 1):
        if flags[p]:
            flags[p * p::p] = bytes(len(range(p * p, bound, p)))
    return tuple(i for i, f in enumerate(flags) if f)


def first_primes(k):
    """The first ``k`` primes as a tuple."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k < 6:
        bound = 14
    else:
        bound = int(k * (math.log(k) + math.log(math.log(k)))) + 2
    return _primes_below(bound)[:k]


def nth_small_prime(i):
    """``P_i`` with ``P_1 = 2``."""
    if i < 1:
        raise ValueError("prime index starts at 1")
    return first_primes(i)[-1]


def _compute_k_max():
    k, prod = 0, 1
    while True:
        p = nth_small_prime(k + 1)
        if 4 + prod * p > MAX_VALUE:
            return k
        prod *= p
        k += 1


K_MAX = _compute_k_max()


@lru_cache(maxsize=None)
def primorial(k):
    """``P_1 * ... * P_k``; ``primorial(0) == 1``."""
    return math.prod(first_primes(k))


@dataclass(frozen=True)
class WheelLevel:
    k: int
    primes: tuple
    primorial: int

    @property
    def span_start(self):
        return 5

    @property
    def span_end(self):
        return 4 + self.primorial

    @property
    def largest_prime(self):
        return self.primes[-1]

    @property
    def next_prime(self):
        return nth_small_prime(self.k + 1)

    @property
    def subset_length(self):
        """Length of each of the ``P_k`` subsets ``S_k^(m)``."""
        return self.primorial // self.primes[-1]

    def __contains__(self, N):
        return self.span_start <= N <= self.span_end

    def is_prospective(self, N):
        """True if ``N`` shares no factor with ``P_1 ... P_k``."""
        return math.gcd(N, self.primorial) == 1


def make_level(k):
    if k < 1:
        raise ValueError(f"level index starts at 1, got {k}")
    if k > K_MAX:
        raise RangeError(f"level {k} exceeds k_max={K_MAX} for the integer width")
    return WheelLevel(k, first_primes(k), primorial(k))


@dataclass(frozen=True)
class LevelCounts:
    n_pp: int
    n_twin: int
    rho_pp: Fraction
    rho_twin: Fraction
    sigma_twin: Fraction
    zeta_partial: Fraction


def n_prospective_primes(k):
    """``prod_{i=2..k} (P_i - 1)``, with the value 1 at ``k = 1``."""
    return math.prod(p - 1 for p in first_primes(k)[1:])


def n_prospective_twins(k):
    """``prod_{i=2..k} (P_i - 2)``, with the value 1 at ``k = 1``."""
    return math.prod(p - 2 for p in first_primes(k)[1:])


def counts(level):
    ps = level.primes
    rho_pp = Fraction(1)
    for p in ps:
        rho_pp *= Fraction(p - 1, p)
    rho_twin = Fraction(1, 2)
    sigma = Fraction(1)
    for p in ps[1:]:
        rho_twin *= Fraction(p - 2, p)
        sigma *= Fraction(p - 2, p - 1)
    return LevelCounts(
        n_pp=n_prospective_primes(level.k),
        n_twin=n_prospective_twins(level.k),
        rho_pp=rho_pp,
        rho_twin=rho_twin,
        sigma_twin=sigma,
        zeta_partial=1 / rho_pp,
    )


def actual_prime_ratio(level, oracle):
    """Fraction of the level's prospective primes that are actually prime.

    The ``k`` primes ``P_1 .. P_k`` are prime but not prospective, so they
    are removed from the prime count.
    """
    pi = oracle.prime_pi(level.span_end)
    return Fraction(pi - level.k, n_prospective_primes(level.k))


def ratio_step_approx(k):
    """``(alpha_k, step_ratio)`` for the level-to-level ratio of actual/prospective.

    ``alpha_k = ln(primorial(k)) / ln(P_{k+1})`` and the step ratio is
    ``P_{k+1}/(P_{k+1}-1) * alpha_k/(alpha_k+1)``.
    """
    if k < 2:
        raise ValueError("ratio approximation needs k >= 2")
    nxt = nth_small_prime(k + 1)
    alpha = sum(math.log(p) for p in first_primes(k)) / math.log(nxt)
    return alpha, (nxt / (nxt - 1)) * (alpha / (alpha + 1))


def prime_fraction_estimate(k):
    """Large-``k`` estimate of the actual/prospective prime ratio from ``pi(N) ~ N/ln N``.

    Computed in log space so it stays finite for ``k`` in the thousands.
    """
    ps = first_primes(k)
    log_primorial = math.fsum(math.log(p) for p in ps)
    log_mertens = math.fsum(math.log(p) - math.log(p - 1) for p in ps)
    log_npp = math.fsum(math.log(p - 1) for p in ps[1:])
    return math.exp(log_mertens) / log_primorial - math.exp(math.log(k) - log_npp)


def largest_prospective(level):
    """``(primorial - 1, primorial + 1)``: the top prospective twin of the level."""
    if level.k < 2:
        raise ValueError("largest prospective pair needs k >= 2")
    return level.primorial - 1, level.primorial + 1


def interval_adjusted_density(level, twins=False):
    """Density over ``(P_k, 4 + primorial]`` instead of the whole level.

    Equals the level density times ``1 / (1 - 1/primorial(k-1))``.
    """
    n = n_prospective_twins(level.k) if twins else n_prospective_primes(level.k)
    return Fraction(n, level.primorial - level.largest_prime)
