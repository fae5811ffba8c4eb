"""Lower bound on twin primes between ``P_k`` and ``P_{k+1}^2``.

For a level ``l`` take ``k`` with ``P_k`` the largest prime whose square is
below ``primorial(l)``.  The bound is

    prod_{j=l}^{k-1} (P_j - 4)/(P_j - 2) * n_twin(l)

kept as an exact ``Fraction`` and compared against sieved counts.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import RangeError
from .wheel import _primes_below, first_primes, n_prospective_twins, nth_small_prime, primorial

MIN_L = 4


def _check_l(l):
    if l < MIN_L:
        raise RangeError(f"bound needs l >= {MIN_L}, got {l}")


def k_for_l(l, oracle=None):
    """``k = pi(isqrt(primorial(l)))``.

    With an oracle the count comes from the sieve; without one from the
    wheel module's own small-prime table.
    """
    _check_l(l)
    root = math.isqrt(primorial(l))
    if oracle is not None:
        return oracle.prime_pi(root)
    return len(_primes_below(root + 1))


def bound_exact(l, k=None):
    _check_l(l)
    if k is None:
        k = k_for_l(l)
    factor = Fraction(1)
    for p in first_primes(k - 1)[l - 1:]:
        factor *= Fraction(p - 4, p - 2)
    return factor * n_prospective_twins(l)


@dataclass(frozen=True)
class BoundReport:
    l: int
    k: int
    p_k: int
    p_k1: int
    bound_exact: Fraction
    bound_floor: int
    actual: int

    @property
    def ratio(self):
        return Fraction(self.bound_exact) / self.actual

    @property
    def holds(self):
        return self.bound_floor <= self.actual

    @property
    def placement_ok(self):
        q = primorial(self.l)
        return self.p_k**2 < q < self.p_k1**2


def twin_lower_bound(l, oracle):
    """Bound and sieved count of twins ``(p, p+2)`` with ``P_k < p`` and ``p + 2 < P_{k+1}^2``."""
    _check_l(l)
    k = k_for_l(l, oracle)
    p_k, p_k1 = oracle.nth_prime(k), oracle.nth_prime(k + 1)
    if p_k1**2 > oracle.ceiling:
        raise RangeError(f"l={l} needs a sieve up to {p_k1**2}, ceiling is {oracle.ceiling}")
    exact = bound_exact(l, k)
    return BoundReport(
        l=l,
        k=k,
        p_k=p_k,
        p_k1=p_k1,
        bound_exact=exact,
        bound_floor=math.floor(exact),
        actual=oracle.twin_pairs_between(p_k, p_k1**2),
    )


@dataclass(frozen=True)
class GrowthReport:
    l: int
    k: int
    k_next: int
    growth_factor: Fraction  # exact bound(l+1)/bound(l) from the product form
    bracket_estimate: float  # simplified bracket, an estimate only
    k_next_estimate: float  # k * sqrt(P_{l+1}), an estimate only
    floor_before: int
    floor_after: int

    @property
    def growth_factor_lower(self):
        return float(self.growth_factor)

    @property
    def passes(self):
        return self.floor_after > self.floor_before


def growth_factor(l, k, k_next):
    """``(P_l-2)(P_{l+1}-2)/(P_l-4) * prod_{j=k}^{k_next-1} (P_j-4)/(P_j-2)``."""
    p_l, p_l1 = nth_small_prime(l), nth_small_prime(l + 1)
    factor = Fraction((p_l - 2) * (p_l1 - 2), p_l - 4)
    for p in first_primes(k_next - 1)[k - 1:]:
        factor *= Fraction(p - 4, p - 2)
    return factor


def bracket_estimate(l, k):
    """``1 - 2/(P_k-2) - 2 sqrt(P_{l+1})/ln P_k``; can be negative at small ``l``."""
    p_k = nth_small_prime(k)
    return 1 - 2 / (p_k - 2) - 2 * math.sqrt(nth_small_prime(l + 1)) / math.log(p_k)


def growth_check(l):
    _check_l(l)
    k, k_next = k_for_l(l), k_for_l(l + 1)
    before, after = bound_exact(l, k), bound_exact(l + 1, k_next)
    return GrowthReport(
        l=l,
        k=k,
        k_next=k_next,
        growth_factor=growth_factor(l, k, k_next),
        bracket_estimate=bracket_estimate(l, k),
        k_next_estimate=k * math.sqrt(nth_small_prime(l + 1)),
        floor_before=math.floor(before),
        floor_after=math.floor(after),
    )


@dataclass(frozen=True)
class TwinAbove:
    n: int
    report: BoundReport
    witness: tuple | None  # least twin pair counted by the report (so above P_k > n)


def find_twin_above(n, oracle, max_l=12):
    """Smallest ``l`` whose interval starts above ``n``, with its bound and count."""
    for l in range(MIN_L, max_l + 1):
        k = k_for_l(l)
        if nth_small_prime(k) > n:
            break
    else:
        raise RangeError(f"no level up to {max_l} has P_k > {n}")
    report = twin_lower_bound(l, oracle)
    witness = None
    hi = report.p_k1**2
    p = report.p_k + 1
    while p + 2 < hi:
        if oracle.is_prime(p) and oracle.is_prime(p + 2):
            witness = (p, p + 2)
            break
        p += 1
    return TwinAbove(n=n, report=report, witness=witness)
