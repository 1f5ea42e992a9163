"""Tests for k-power detection and factor-pattern counting."""

import pytest

from crucialperms.constructions import r_perm
from crucialperms.powers import (
    BadExponent,
    PowerWitness,
    count_factor_patterns,
    find_k_power,
    is_k_power_free,
    witness_valid,
)

from .helpers import all_patterns, brute_find_power, random_patterns


def test_known_squares():
    # Adjacent blocks only need the same relative order, so interleaved
    # values still form a square.
    for perm in ((1, 2, 3, 4), (2, 4, 1, 3), (1, 3, 2, 4), (3, 1, 4, 2)):
        w = find_k_power(perm, 2)
        assert (w.start, w.block_length, w.exponent) == (1, 2, 2)
        assert not is_k_power_free(perm, 2)
    assert find_k_power((2, 4, 1, 3), 2).block_pattern == (1, 2)


def test_known_square_free():
    for perm in ((), (1,), (1, 2), (2, 1), (1, 3, 2), (2, 1, 3), (3, 2, 5, 6, 4, 1, 7)):
        assert is_k_power_free(perm, 2)


def test_known_cube():
    w = find_k_power((4, 6, 1, 5, 2, 3), 3)
    assert w == PowerWitness(start=1, block_length=2, exponent=3, block_pattern=(1, 2))
    assert w.end == 6


def test_witness_scan_order_prefers_smaller_start():
    # (1,2,3,4,5,6) has squares everywhere; the reported one starts first
    # and among those has the shortest block.
    w = find_k_power((1, 2, 3, 4, 5, 6), 2)
    assert (w.start, w.block_length) == (1, 2)


def test_find_k_power_matches_definition_exhaustively():
    for n in range(1, 7):
        for pat in all_patterns(n):
            for k in (2, 3):
                got = find_k_power(pat, k)
                expected = brute_find_power(pat, k)
                if expected is None:
                    assert got is None
                else:
                    assert (got.start, got.block_length) == expected
                    assert got.exponent == k
                    assert witness_valid(pat, got)


def test_find_k_power_matches_definition_on_random_longer_patterns():
    for n, seed in ((9, 201), (11, 202)):
        for pat in random_patterns(n, 150, seed=seed):
            for k in (2, 3, 4):
                got = find_k_power(pat, k)
                expected = brute_find_power(pat, k)
                assert (None if got is None else (got.start, got.block_length)) == expected


def test_find_k_power_accepts_unnormalized_symbols():
    w = find_k_power((10, 40, -3, 25), 2)
    assert (w.start, w.block_length) == (1, 2)


def test_bad_exponent():
    with pytest.raises(BadExponent):
        find_k_power((1, 2, 3, 4), 1)
    with pytest.raises(BadExponent):
        is_k_power_free((1, 2, 3, 4), 0)


def test_witness_valid_rejects_misplaced_claims():
    perm = (1, 2, 3, 4, 5)
    good = find_k_power(perm, 2)
    assert witness_valid(perm, good)
    assert not witness_valid(perm, PowerWitness(3, 2, 2, (1, 2)))  # (3,4),(5,?) off the end
    assert not witness_valid(perm, PowerWitness(1, 2, 2, (2, 1)))  # wrong block pattern
    assert not witness_valid((2, 1, 3, 5, 4), good)


def test_count_factor_patterns():
    r3 = r_perm(3)
    assert count_factor_patterns(r3, (3, 2, 1)) == 2
    assert count_factor_patterns(r3, (2, 3, 1)) == 3
    assert count_factor_patterns(r3, (2, 1, 3)) == 0
    # Normalization of the probe pattern: (20, 30, 10) means (2, 3, 1).
    assert count_factor_patterns(r3, (20, 30, 10)) == 3
    assert count_factor_patterns((1, 2, 3, 4), (1, 2)) == 3
    assert count_factor_patterns((1, 2), (1, 2, 3)) == 0
    assert count_factor_patterns((5,), (1,)) == 1
    with pytest.raises(ValueError):
        count_factor_patterns((1, 2, 3), ())


def test_count_factor_patterns_brute_cross_check():
    for pat in random_patterns(10, 40, seed=203):
        for probe in ((1, 2), (2, 1), (1, 3, 2), (2, 3, 1), (1, 2, 3, 4)):
            w = len(probe)
            brute = sum(
                1
                for i in range(len(pat) - w + 1)
                if tuple(
                    sorted(pat[i : i + w]).index(v) + 1 for v in pat[i : i + w]
                )
                == probe
            )
            assert count_factor_patterns(pat, probe) == brute
