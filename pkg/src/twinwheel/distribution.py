"""How prospective primes and twins spread over the subsets ``S_k^(m)``.

``S_k`` splits into ``P_k`` consecutive subsets of length ``primorial(k-1)``.
Every subset holds at least ``n_pp(k-1) - n_pp(k-2)`` prospective primes and
``n_twin(k-1) - 2 n_twin(k-2)`` prospective twins; these functions measure
the actual occupancy so the minima are checked, not assumed.
"""
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .limits import DEFAULT_ENUM_CAP
from .propagation import _check_level, subset_blocks
from .wheel import n_prospective_primes, n_prospective_twins, nth_small_prime, primorial


@dataclass(frozen=True)
class SubsetStats:
    k: int
    counts_pp: tuple
    counts_twin: tuple
    min_pp_bound: int
    min_twin_bound: int

    @property
    def observed_min_pp(self):
        return min(self.counts_pp)

    @property
    def observed_min_twin(self):
        return min(self.counts_twin)

    @property
    def pp_pass(self):
        return tuple(c >= self.min_pp_bound for c in self.counts_pp)

    @property
    def twin_pass(self):
        return tuple(c >= self.min_twin_bound for c in self.counts_twin)

    @property
    def pp_holds(self):
        return all(self.pp_pass)

    @property
    def twin_holds(self):
        return all(self.twin_pass)


def _bucket(k, twins):
    counts = [0] * nth_small_prime(k)
    for m, block in subset_blocks(k, twins):
        counts[m] += len(block)
    return tuple(counts)


def subset_stats(k, cap=DEFAULT_ENUM_CAP):
    if k < 3:
        raise ValueError("subset minima need k >= 3")
    _check_level(k, False, cap)
    return SubsetStats(
        k=k,
        counts_pp=_bucket(k, False),
        counts_twin=_bucket(k, True),
        min_pp_bound=n_prospective_primes(k - 1) - n_prospective_primes(k - 2),
        min_twin_bound=n_prospective_twins(k - 1) - 2 * n_prospective_twins(k - 2),
    )


def _twin_lows(level, cap):
    _check_level(level, True, cap)
    return np.concatenate([b for _, b in subset_blocks(level, True)])


@dataclass(frozen=True)
class ExclusionPairReport:
    """Disallowed subsets when the twins of ``S_{k-1}`` are extended into ``S_k``.

    ``lows``, ``mhat_low`` and ``mhat_high`` are parallel arrays over the twins
    of ``S_{k-1}``.  Family fields are only filled for ``k >= 4``: a family is
    the set of twins of ``S_{k-1}`` sharing one parent twin in ``S_{k-2}``.
    """

    k: int
    prime: int
    delta_m_hat: int
    delta_constant: bool
    lows: np.ndarray
    mhat_low: np.ndarray
    mhat_high: np.ndarray
    delta_m_plus: int | None = None
    delta_m_minus: int | None = None
    families: int = 0
    family_unique: bool = True
    shared_exclusions: tuple = ()
    observed_shifts: frozenset = frozenset()
    double_shared: bool = False

    @property
    def delta_sum_ok(self):
        """``delta_m_plus + delta_m_minus == P_k`` when both shifts actually occur."""
        if self.delta_m_plus is None:
            return None
        both = {self.delta_m_plus, -self.delta_m_minus} <= self.observed_shifts
        if not both:
            return None
        return self.delta_m_plus + self.delta_m_minus == self.prime


def exclusion_analysis(k, cap=DEFAULT_ENUM_CAP):
    if k < 3:
        raise ValueError("exclusion analysis needs k >= 3")
    prime = nth_small_prime(k)
    q = primorial(k - 1)
    inv = pow(q % prime, -1, prime)
    lows = _twin_lows(k - 1, cap)
    mhat_low = (-(lows % prime) * inv) % prime
    mhat_high = (-((lows + 2) % prime) * inv) % prime
    deltas = np.unique((mhat_high - mhat_low) % prime)
    fields = dict(
        k=k,
        prime=prime,
        delta_m_hat=int(deltas[0]),
        delta_constant=len(deltas) == 1,
        lows=lows,
        mhat_low=mhat_low,
        mhat_high=mhat_high,
    )
    if k < 4:
        return ExclusionPairReport(**fields)

    q_parent = primorial(k - 2)
    inv_parent = pow(q_parent % prime, -1, prime)
    fields["delta_m_plus"] = (2 * inv_parent) % prime
    fields["delta_m_minus"] = (-2 * inv_parent) % prime

    families = defaultdict(list)
    parents = (lows - 5) % q_parent + 5
    for low, parent, a, b in zip(lows.tolist(), parents.tolist(), mhat_low.tolist(), mhat_high.tolist()):
        families[parent].append(((low - parent) // q_parent, low, a, b))

    unique = True
    shared, shifts, double = [], set(), False
    for members in families.values():
        by_high = {}
        for m, low, a, b in members:
            by_high[b] = (m, low, a)
        unique &= len({a for _, _, a, _ in members}) == len(members) == len(by_high)
        for m, low, a, b in members:
            hit = by_high.get(a)
            if hit is None or hit[1] == low:
                continue
            m2, low2, a2 = hit
            shared.append((low, low2))
            shifts.add(m - m2)
            if a2 == b:
                double = True
    fields.update(
        families=len(families),
        family_unique=unique,
        shared_exclusions=tuple(shared),
        observed_shifts=frozenset(shifts),
        double_shared=double,
    )
    return ExclusionPairReport(**fields)


class TwinFactorBound(NamedTuple):
    count: int
    bound: int
    fraction_bound: Fraction

    @property
    def holds(self):
        return self.count <= self.bound


def twin_factor_bound(k, cap=DEFAULT_ENUM_CAP):
    """Twins of ``S_{k-1}`` with ``P_k`` dividing a member, against ``2 n_twin(k-2)``."""
    if k < 4:
        raise ValueError("twin factor bound needs k >= 4")
    prime = nth_small_prime(k)
    lows = _twin_lows(k - 1, cap)
    hit = (lows % prime == 0) | ((lows + 2) % prime == 0)
    return TwinFactorBound(
        count=int(np.count_nonzero(hit)),
        bound=2 * n_prospective_twins(k - 2),
        fraction_bound=Fraction(2, nth_small_prime(k - 1) - 2),
    )


def trend_ratio(p_k, p_prev):
    """``P_k (P_{k-1} - 4) / ((P_k - 2)(P_{k-1} - 2))``: guaranteed share of the even split."""
    return Fraction(p_k * (p_prev - 4), (p_k - 2) * (p_prev - 2))


def subset_ratio_trend(k):
    if k < 4:
        raise ValueError("trend ratio needs k >= 4")
    return trend_ratio(nth_small_prime(k), nth_small_prime(k - 1))
