"""Tests for level decomposition, composition, and the square-free generator."""

import pytest

from crucialperms.core import normalize
from crucialperms.levels import (
    DESCENT_ASCENT,
    FREE,
    LAST_ASCENT,
    ROLE_CYCLE,
    BoundaryConstraint,
    HasLengthFourSquare,
    LengthMismatch,
    SeedLengthMismatch,
    SeedNotSquareFree,
    UnsatisfiableConstraint,
    check_conditions,
    hml_compose,
    level_decompose,
    square_free_generate,
)
from crucialperms.powers import count_factor_patterns, is_k_power_free


def _medium_size(first_role, n):
    c = ROLE_CYCLE.index(first_role)
    return sum(1 for p in range(n) if (c + p) % 4 in (1, 3))


def test_level_decompose_example():
    dec = level_decompose((2, 4, 6, 3, 1, 5, 7))
    assert dec.phase == 1
    assert dec.lower_positions == (1, 5)
    assert dec.upper_positions == (3, 7)
    assert dec.medium_positions == (2, 4, 6)
    assert dec.lower_values == (2, 1)
    assert dec.upper_values == (6, 7)
    assert dec.medium_values == (4, 3, 5)


def test_level_decompose_rejects_length_four_squares():
    for perm in ((1, 2, 3, 4), (2, 4, 1, 3), (5, 1, 2, 3, 4, 6)):
        with pytest.raises(HasLengthFourSquare):
            level_decompose(perm)


def test_level_decompose_prefers_smallest_phase():
    assert level_decompose(()).phase == 0
    assert level_decompose((1,)).phase == 0
    assert level_decompose((1, 2)).phase == 0
    assert level_decompose((2, 1)).phase == 2


def test_level_positions_follow_phase_residues():
    for n in (5, 9, 16, 27):
        perm = square_free_generate(n)
        dec = level_decompose(perm)
        for p in dec.lower_positions:
            assert p % 4 == dec.phase % 4
        for p in dec.upper_positions:
            assert p % 4 == (dec.phase + 2) % 4
        assert len(dec.lower_positions) + len(dec.medium_positions) + len(
            dec.upper_positions
        ) == n


def test_hml_compose_examples():
    assert hml_compose([3, 1, 2, 4], "lower", 9, value_base=23) == (
        25, 28, 30, 26, 24, 27, 31, 29, 23,
    )
    assert hml_compose([1, 2], "upper", 4) == (4, 2, 1, 3)


def test_hml_compose_round_trips_with_decompose():
    for n in (3, 6, 10, 15, 24, 37):
        perm = square_free_generate(n)
        dec = level_decompose(perm)
        first_role = ROLE_CYCLE[(1 - dec.phase) % 4]
        rebuilt = hml_compose(dec.medium_values, first_role, n)
        assert rebuilt == normalize(perm) == perm


def test_hml_compose_value_window():
    out = hml_compose((3, 1, 2, 4), "medium-asc", 7, value_base=40)
    assert sorted(out) == list(range(40, 47))


def test_hml_compose_rejects_bad_seeds():
    with pytest.raises(SeedLengthMismatch):
        hml_compose((1, 2, 3), "lower", 9)
    with pytest.raises(SeedNotSquareFree):
        hml_compose((1, 2, 3, 4), "lower", 9)
    with pytest.raises(ValueError):
        hml_compose((1,), "sideways", 3)


def test_hml_compose_outputs_avoid_the_two_blocked_patterns():
    # Square-freeness plus absence of factors isomorphic to (2,3,4,1) and
    # (3,2,1,4) is what makes the composition safe to concatenate.
    for n in range(1, 61):
        for first_role in ROLE_CYCLE:
            seed = square_free_generate(_medium_size(first_role, n))
            out = hml_compose(seed, first_role, n)
            assert is_k_power_free(out, 2)
            assert count_factor_patterns(out, (2, 3, 4, 1)) == 0
            assert count_factor_patterns(out, (3, 2, 1, 4)) == 0


def test_square_free_generate_basics():
    assert square_free_generate(0) == ()
    assert square_free_generate(1) == (1,)
    assert square_free_generate(4, DESCENT_ASCENT) == (3, 1, 2, 4)
    with pytest.raises(ValueError):
        square_free_generate(-1)


def test_square_free_generate_is_deterministic():
    for n in (5, 12, 33):
        assert square_free_generate(n) == square_free_generate(n)


def test_square_free_generate_meets_constraints():
    constraints = (FREE, BoundaryConstraint(first_descent=True), LAST_ASCENT, DESCENT_ASCENT)
    for n in range(2, 81):
        for constraint in constraints:
            both = constraint.first_descent and constraint.last_ascent
            if both and n % 4 == 2:
                with pytest.raises(UnsatisfiableConstraint):
                    square_free_generate(n, constraint)
                continue
            out = square_free_generate(n, constraint)
            assert sorted(out) == list(range(1, n + 1))
            assert is_k_power_free(out, 2)
            if constraint.first_descent:
                assert out[0] > out[1]
            if constraint.last_ascent:
                assert out[-2] < out[-1]


def test_check_conditions_level_structure_mode():
    report = check_conditions(square_free_generate(13), "S")
    assert report.passed
    assert set(report.conditions) == {"S1", "S2", "S3"}

    # Square-free with a valid phase but interleaved level values.
    report = check_conditions((3, 5, 7, 2, 1, 4, 6), "S")
    assert report.conditions["S1"]
    assert not report.conditions["S2"]
    assert not report.passed

    report = check_conditions((1, 2, 3, 4), "S")
    assert report.conditions == {"S1": False, "S2": False, "S3": False}


def test_check_conditions_suffix_block_mode():
    report = check_conditions((14, 13, 15, 17, 16, 12), "A", m=5, k=3)
    assert report.passed
    assert set(report.conditions) == {"A1", "A2", "A3", "A4", "A5"}
    # Shifting one symbol out of the required value window breaks A1 only
    # if the rest still decomposes; a wrong window certainly fails.
    report = check_conditions((2, 1, 3, 5, 4, 0), "A", m=5, k=3)
    assert not report.conditions["A1"]


def test_check_conditions_validation():
    with pytest.raises(LengthMismatch):
        check_conditions((1, 2, 3), "A", m=5, k=3)
    with pytest.raises(LengthMismatch):
        check_conditions((1, 3, 2), "B", m=1, k=3)
    with pytest.raises(ValueError):
        check_conditions((1, 3, 2), "A")
    with pytest.raises(ValueError):
        check_conditions((1, 3, 2), "X", m=1, k=3)
