import math
from fractions import Fraction

import pytest

import oracles
from twinwheel.bounds import (
    bound_exact,
    bracket_estimate,
    find_twin_above,
    growth_check,
    k_for_l,
    twin_lower_bound,
)
from twinwheel.errors import RangeError
from twinwheel.oracle import PrimeSieve
from twinwheel.wheel import nth_small_prime, primorial

FLOORS = {4: 7, 5: 43, 6: 350, 7: 3988, 8: 52432}
ACTUAL = {4: 16, 5: 74, 6: 480, 7: 4653, 8: 57529}
PRINTED_RATIOS = {4: .44, 5: .58, 6: .73, 7: .86, 8: .91}
KS = {4: 6, 5: 15, 6: 40, 7: 127, 8: 443}


@pytest.fixture(scope="module")
def sieve():
    return PrimeSieve()


@pytest.mark.parametrize("l, k", sorted(KS.items()))
def test_k_for_l_both_routes(sieve, l, k):
    assert k_for_l(l) == k_for_l(l, sieve) == k


def test_level_four_identity():
    assert bound_exact(4) == Fraction(3, 5) * Fraction(7, 9) * 15 == 7


@pytest.mark.parametrize("l", range(4, 9))
def test_bound_floor(l):
    assert math.floor(bound_exact(l)) == FLOORS[l]


def test_bound_floor_increasing():
    floors = [math.floor(bound_exact(l)) for l in range(4, 11)]
    assert floors == sorted(set(floors))


@pytest.mark.parametrize("l", range(4, 9))
def test_twin_lower_bound(sieve, l):
    r = twin_lower_bound(l, sieve)
    assert (r.k, r.bound_floor, r.actual) == (KS[l], FLOORS[l], ACTUAL[l])
    assert r.placement_ok and r.holds
    assert r.ratio == r.bound_exact / r.actual
    # the printed ratio column is floor/actual to two places
    assert round(r.bound_floor / r.actual, 2) == PRINTED_RATIOS[l]


def test_actual_small_by_trial_division(sieve):
    r = twin_lower_bound(4, sieve)
    assert r.actual == oracles.twin_count_strict(r.p_k, r.p_k1**2)


def test_placement_is_tight():
    for l in range(4, 11):
        k = k_for_l(l)
        q = primorial(l)
        assert nth_small_prime(k) ** 2 < q < nth_small_prime(k + 1) ** 2


@pytest.mark.parametrize("l", range(4, 10))
def test_growth_identity(l):
    g = growth_check(l)
    assert bound_exact(l) * g.growth_factor == bound_exact(l + 1)
    assert g.passes and g.growth_factor > 1


def test_bracket_estimate_negative_while_exact_factor_grows():
    g = growth_check(5)
    assert g.bracket_estimate == pytest.approx(-0.917, abs=1e-3)
    assert g.bracket_estimate < 0 < g.growth_factor_lower
    assert bracket_estimate(5, 15) == g.bracket_estimate


def test_bound_needs_l_four():
    with pytest.raises(RangeError):
        bound_exact(3)


def test_ceiling_guard():
    with pytest.raises(RangeError):
        twin_lower_bound(8, PrimeSieve(ceiling=10**6))


def test_find_twin_above(sieve):
    found = find_twin_above(100, sieve)
    assert found.report.l == 6 and found.report.p_k > 100
    assert found.witness == (179, 181)
    assert find_twin_above(0, sieve).report.l == 4
