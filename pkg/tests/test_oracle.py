import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from twinwheel.errors import RangeError
from twinwheel.oracle import CHECKPOINT_FILE, CheckpointCache, PrimeSieve

SMALL = 20000
NAIVE_PRIMES = oracles.primes_below(SMALL)


@pytest.fixture(scope="module")
def sieve():
    return PrimeSieve()


@pytest.fixture(scope="module")
def streaming():
    # tiny in-memory region so every query above it goes through segments
    return PrimeSieve(memory_limit=1 << 10, segment_size=64)


def test_primes_up_to_matches_trial_division(sieve):
    assert sieve.primes_up_to(SMALL - 1).tolist() == NAIVE_PRIMES


@pytest.mark.parametrize(
    "n, pi",
    [(0, 0), (1, 0), (2, 1), (10, 4), (34, 11), (214, 47), (2314, 344), (30034, 3248),
     (510514, 42331), (9699694, 646029)],
)
def test_prime_pi_known(sieve, n, pi):
    assert sieve.prime_pi(n) == pi


@given(st.integers(min_value=0, max_value=SMALL - 1))
def test_prime_pi_matches_naive(n):
    expected = sum(1 for p in NAIVE_PRIMES if p <= n)
    assert PrimeSieve().prime_pi(n) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1025, max_value=SMALL - 1))
def test_streaming_matches_memory(n):
    s = PrimeSieve(memory_limit=1 << 10, segment_size=64)
    assert s.prime_pi(n) == PrimeSieve().prime_pi(n)


def test_threaded_streaming():
    a = PrimeSieve(memory_limit=1 << 12, segment_size=256, workers=3)
    assert a.prime_pi(10**6) == 78498


@pytest.mark.parametrize("i, p", [(1, 2), (2, 3), (4, 7), (7, 17), (443, 3109), (444, 3119), (10000, 104729)])
def test_nth_prime(sieve, i, p):
    assert sieve.nth_prime(i) == p


def test_nth_prime_consistent_with_pi(sieve):
    for i in range(1, 10**4 + 1):
        assert sieve.prime_pi(sieve.nth_prime(i)) == i


def test_exhaustive_against_trial_division(sieve):
    flags = sieve.is_prime_array(np.arange(10**5 + 1))
    assert np.flatnonzero(flags).tolist() == oracles.primes_below(10**5 + 1)


@settings(max_examples=1000, deadline=None)
@given(st.integers(0, 10**8))
def test_random_against_trial_division(n):
    assert SHARED.is_prime(n) == oracles.is_prime(n)


SHARED = PrimeSieve()


@given(st.integers(0, 10**4), st.integers(0, 10**4))
def test_pi_monotone(a, b):
    a, b = sorted((a, b))
    assert SHARED.prime_pi(a) <= SHARED.prime_pi(b)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 5000), st.integers(1, 3000), st.integers(1, 3000))
def test_twin_counts_add_up(a, w1, w2):
    b, c = a + w1, a + w1 + w2
    total = SHARED.twin_pairs_between(a, c)
    parts = SHARED.twin_pairs_between(a, b) + SHARED.twin_pairs_between(b, c)
    # pairs that touch b are counted by neither part
    straddle = sum(
        1 for p in (b - 2, b - 1, b) if p > a and p + 2 < c and oracles.is_prime(p) and oracles.is_prime(p + 2)
    )
    assert total == parts + straddle


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 121, 30031, 30029, 9699691, 2**31 - 1])
def test_is_prime(sieve, n):
    assert sieve.is_prime(n) == oracles.is_prime(n)


def test_is_prime_above_memory(streaming):
    assert streaming.is_prime(104729) and not streaming.is_prime(104731)


def test_is_prime_array(sieve):
    values = np.arange(0, 5000)
    assert sieve.is_prime_array(values).tolist() == [oracles.is_prime(int(v)) for v in values]
    assert sieve.is_prime_array([]).size == 0


@pytest.mark.parametrize(
    "lo, hi, count",
    [(5, 11, 0), (3, 8, 1), (13, 289, 16), (2, 3, 0), (0, 100, 8)],
)
def test_twin_pairs_strict_bounds(sieve, lo, hi, count):
    assert sieve.twin_pairs_between(lo, hi) == count


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 3000), st.integers(1, 3000))
def test_twin_pairs_match_naive(lo, width):
    hi = lo + width
    expected = oracles.twin_count_strict(lo, hi)
    assert PrimeSieve().twin_pairs_between(lo, hi) == expected
    assert PrimeSieve(memory_limit=16, segment_size=16).twin_pairs_between(lo, hi) == expected


def test_twin_pairs_across_segment_edges():
    s = PrimeSieve(memory_limit=16, segment_size=16)
    assert s.twin_pairs_between(13, 289) == 16
    assert s.twin_pairs_between(3109, 3119**2) == 57529


def test_ceiling_guard():
    s = PrimeSieve(ceiling=1000)
    with pytest.raises(RangeError):
        s.prime_pi(1001)
    with pytest.raises(RangeError):
        s.is_prime(-1)
    with pytest.raises(ValueError):
        s.twin_pairs_between(10, 10)


def test_checkpoint_round_trip(tmp_path):
    cache = CheckpointCache(tmp_path)
    cache.put(10**9, 50847534)
    cache.put(10**8 + 7, 5761455)
    again = CheckpointCache(tmp_path)
    assert len(again) == 2
    assert again.get(10**9) == 50847534
    assert again.floor(10**9 - 1).N == 10**8 + 7
    assert again.floor(5) is None
    lines = (tmp_path / CHECKPOINT_FILE).read_text().splitlines()
    assert lines == ["100000007\t5761455", "1000000000\t50847534"]


def test_checkpoint_skips_corrupt_lines(tmp_path, caplog):
    (tmp_path / CHECKPOINT_FILE).write_text("100\t25\ngarbage\n7\t-1\n1000\t168\n")
    with caplog.at_level(logging.WARNING):
        cache = CheckpointCache(tmp_path)
    assert len(cache) == 2 and cache.get(1000) == 168
    assert sum("corrupt" in r.message for r in caplog.records) == 2


def test_sieve_uses_and_writes_checkpoints(tmp_path):
    s = PrimeSieve(cache_dir=tmp_path, memory_limit=1 << 20)
    n = 10**8 + 1
    pi = s.prime_pi(n)
    assert pi == 5761455
    assert CheckpointCache(tmp_path).get(n) == pi
    # a planted checkpoint is trusted, which proves the lookup path is used
    CheckpointCache(tmp_path).put(n, 1)
    assert PrimeSieve(cache_dir=tmp_path, memory_limit=1 << 20).prime_pi(n) == 1
