"""Level decomposition of square-free permutations and the high-medium-low
composition used to build them.

A permutation with no square factor of length 4 has alternating comparison
signs with period dependence mod 4, which sorts its positions into three
levels for some phase i in {0,1,2,3}:

    lower   positions p == i   (mod 4): strict local minima,
    upper   positions p == i+2 (mod 4): strict local maxima,
    medium  the remaining positions.

Walking left to right the position roles cycle through
``lower, medium-asc, upper, medium-desc`` (a medium-asc position sits on
the rising flank before an upper, a medium-desc on the falling flank
before a lower).

The high-medium-low composition inverts the decomposition: given a target
length, the role of the first position and a square-free seed for the
medium level, it assigns the smallest values to the lower positions in
decreasing positional order, the largest to the upper positions in
increasing order, and arranges the middle values order-isomorphically to
the seed.  The result is always square-free and never contains a length-4
factor order-isomorphic to (2,3,4,1) or (3,2,1,4).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Perm, normalize, validate_permutation
from .powers import find_k_power

LOWER = "lower"
MEDIUM_ASC = "medium-asc"
UPPER = "upper"
MEDIUM_DESC = "medium-desc"
ROLE_CYCLE = (LOWER, MEDIUM_ASC, UPPER, MEDIUM_DESC)

_MODE_S = "S"
_MODE_A = "A"
_MODE_B = "B"


class HasLengthFourSquare(ValueError):
    """The permutation contains a square of length 4 and has no level phase."""


class NoValidPhase(RuntimeError):
    """Internal invariant failure: comparison signs alternate but no phase fits."""


class SeedLengthMismatch(ValueError):
    """The medium seed length does not match the number of medium positions."""


class SeedNotSquareFree(ValueError):
    """The medium seed contains a square, so the composition would too."""


class UnsatisfiableConstraint(ValueError):
    """No square-free permutation of this length meets the boundary constraints."""


class LengthMismatch(ValueError):
    """The permutation length does not fit the requested condition mode."""


@dataclass(frozen=True)
class LevelDecomposition:
    """Positions (1-based) and values of the three levels, in positional order."""

    phase: int
    lower_positions: tuple[int, ...]
    medium_positions: tuple[int, ...]
    upper_positions: tuple[int, ...]
    lower_values: Perm
    medium_values: Perm
    upper_values: Perm


@dataclass(frozen=True)
class BoundaryConstraint:
    """Requirements on the first and last symbol pair of a generated
    permutation: a forced descent at the front and/or a forced ascent at
    the end.  Unset fields leave the pair free."""

    first_descent: bool = False
    last_ascent: bool = False


FREE = BoundaryConstraint()
LAST_ASCENT = BoundaryConstraint(last_ascent=True)
DESCENT_ASCENT = BoundaryConstraint(first_descent=True, last_ascent=True)


def _phase_is_valid(perm: Sequence[int], phase: int) -> bool:
    n = len(perm)
    for idx in range(n):
        r = (idx + 1 - phase) % 4
        if r == 0:  # lower: strict local minimum
            if idx > 0 and perm[idx] > perm[idx - 1]:
                return False
            if idx < n - 1 and perm[idx] > perm[idx + 1]:
                return False
        elif r == 2:  # upper: strict local maximum
            if idx > 0 and perm[idx] < perm[idx - 1]:
                return False
            if idx < n - 1 and perm[idx] < perm[idx + 1]:
                return False
    return True


def level_decompose(perm: Sequence[int]) -> LevelDecomposition:
    """Split ``perm`` into its lower, medium and upper levels.

    Requires that ``perm`` has no square factor of length 4.  Several
    phases can satisfy the defining inequalities only for lengths <= 2;
    the smallest valid phase is returned.

    >>> level_decompose((2, 4, 6, 3, 1, 5, 7)).phase
    1
    >>> level_decompose((2, 4, 6, 3, 1, 5, 7)).medium_values
    (4, 3, 5)
    """
    perm = tuple(perm)
    n = len(perm)
    for idx in range(n - 3):
        if (perm[idx] < perm[idx + 1]) == (perm[idx + 2] < perm[idx + 3]):
            raise HasLengthFourSquare(
                f"square of length 4 at positions {idx + 1}..{idx + 4}"
            )
    for phase in range(4):
        if _phase_is_valid(perm, phase):
            lower, medium, upper = [], [], []
            for idx in range(n):
                r = (idx + 1 - phase) % 4
                (lower if r == 0 else upper if r == 2 else medium).append(idx + 1)
            return LevelDecomposition(
                phase,
                tuple(lower),
                tuple(medium),
                tuple(upper),
                tuple(perm[p - 1] for p in lower),
                tuple(perm[p - 1] for p in medium),
                tuple(perm[p - 1] for p in upper),
            )
    raise NoValidPhase("no phase satisfies the level inequalities")


def _roles(first_role: str, n: int) -> list[int]:
    try:
        c = ROLE_CYCLE.index(first_role)
    except ValueError:
        raise ValueError(f"first_role must be one of {ROLE_CYCLE}, got {first_role!r}")
    return [(c + p) % 4 for p in range(n)]


def hml_compose(
    medium_seed: Sequence[int],
    first_role: str,
    length: int,
    value_base: int = 1,
    validate: bool = True,
) -> Perm:
    """Compose a square-free permutation from its level data.

    ``medium_seed`` prescribes the relative order of the medium level and
    must be square-free; ``first_role`` fixes the role of position 1 and
    thereby the whole role cycle; the output uses the ``length``
    consecutive values starting at ``value_base``.

    >>> hml_compose([3, 1, 2, 4], "lower", 9, value_base=23)
    (25, 28, 30, 26, 24, 27, 31, 29, 23)
    >>> hml_compose([1, 2], "upper", 4)
    (4, 2, 1, 3)
    """
    seed = validate_permutation(medium_seed)
    roles = _roles(first_role, length)
    lows = [i for i in range(length) if roles[i] == 0]
    ups = [i for i in range(length) if roles[i] == 2]
    mids = [i for i in range(length) if roles[i] in (1, 3)]
    if len(mids) != len(seed):
        raise SeedLengthMismatch(
            f"{len(mids)} medium positions but seed has length {len(seed)}"
        )
    if validate and find_k_power(seed, 2) is not None:
        raise SeedNotSquareFree(f"medium seed {seed} contains a square")

    out = [0] * length
    for j, i in enumerate(lows):
        out[i] = value_base + len(lows) - 1 - j
    for j, i in enumerate(ups):
        out[i] = value_base + length - len(ups) + j
    mid_base = value_base + len(lows)
    seed_ranks = normalize(seed)
    for j, i in enumerate(mids):
        out[i] = mid_base + seed_ranks[j] - 1
    result = tuple(out)
    if validate and find_k_power(result, 2) is not None:
        raise NoValidPhase(f"composed output {result} is not square-free")
    return result


def square_free_generate(
    n: int, constraint: BoundaryConstraint = FREE, validate: bool = True
) -> Perm:
    """Deterministically generate a square-free pattern of length ``n``.

    The generator composes levels recursively: it picks the smallest
    first-position role compatible with ``constraint`` (a descent needs an
    upper or medium-desc start, an ascent needs an upper or medium-asc
    end) and recurses on the medium seed.  Constraints on lengths <= 1 are
    vacuous.  Demanding both a first descent and a last ascent is
    impossible exactly when n == 2 (mod 4): sign alternation forces the
    first and last comparison to agree at those lengths.

    >>> square_free_generate(4, DESCENT_ASCENT)
    (3, 1, 2, 4)
    """
    if n < 0:
        raise ValueError("length must be nonnegative")
    if n <= 1:
        return tuple(range(1, n + 1))
    if constraint.first_descent and constraint.last_ascent:
        if n % 4 == 2:
            raise UnsatisfiableConstraint(
                f"no square-free pattern of length {n} starts with a descent "
                "and ends with an ascent (length is 2 mod 4)"
            )
        if n == 4:
            # Pinned so that downstream compositions reproduce the
            # reference sequences exactly; any valid choice would do.
            return (3, 1, 2, 4)

    first_ok = (2, 3) if constraint.first_descent else (0, 1, 2, 3)
    last_ok = (1, 2) if constraint.last_ascent else (0, 1, 2, 3)
    for c in range(4):
        if c in first_ok and (c + n - 1) % 4 in last_ok:
            break
    else:
        raise UnsatisfiableConstraint(f"no start role fits {constraint} at length {n}")

    mids = sum(1 for p in range(n) if (c + p) % 4 in (1, 3))
    seed = square_free_generate(mids, FREE, validate=False)
    out = hml_compose(seed, ROLE_CYCLE[c], n, validate=False)
    if validate:
        if find_k_power(out, 2) is not None:
            raise NoValidPhase(f"generated output {out} is not square-free")
        if constraint.first_descent and not out[0] > out[1]:
            raise NoValidPhase("generated output does not start with a descent")
        if constraint.last_ascent and not out[-2] < out[-1]:
            raise NoValidPhase("generated output does not end with an ascent")
    return out


@dataclass
class ConditionReport:
    """Outcome of a named condition family; ``conditions`` maps each
    condition name to its truth value."""

    mode: str
    conditions: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.conditions.values())


def _increasing(seq: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(seq, seq[1:]))


def _decreasing(seq: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(seq, seq[1:]))


def _separated(dec: LevelDecomposition) -> bool:
    chain = [v for v in (dec.lower_values, dec.medium_values, dec.upper_values) if v]
    return all(max(a) < min(b) for a, b in zip(chain, chain[1:]))


def check_conditions(
    perm: Sequence[int], mode: str, m: int | None = None, k: int | None = None
) -> ConditionReport:
    """Evaluate one of three condition families on ``perm``.

    Mode ``"S"`` checks the level-structure requirements that make
    ``hml_compose`` applicable: a valid phase exists, the level values
    separate (lower < medium < upper), and the medium sequence is
    square-free.

    Modes ``"A"`` (length m+1, suffix building block) and ``"B"`` (length
    8m+1, middle building block) check the symbol window for the given m
    and k plus the boundary conditions: the outer symbols lie on the lower
    level, the upper level increases, the lower level decreases, and the
    last two medium symbols ascend.

    >>> check_conditions((14, 13, 15, 17, 16, 12), "A", m=5, k=3).passed
    True
    """
    perm = validate_permutation(perm)
    mode = mode.upper()
    try:
        dec: LevelDecomposition | None = level_decompose(perm)
    except HasLengthFourSquare:
        dec = None

    if mode == _MODE_S:
        conds = {
            "S1": dec is not None,
            "S2": dec is not None and _separated(dec),
            "S3": dec is not None and find_k_power(dec.medium_values, 2) is None,
        }
        return ConditionReport(mode, conds)

    if mode not in (_MODE_A, _MODE_B):
        raise ValueError(f"mode must be 'S', 'A' or 'B', got {mode!r}")
    if m is None or k is None:
        raise ValueError(f"mode {mode!r} requires m and k")

    if mode == _MODE_A:
        want_len = m + 1
        base = 2 * k * k - 3 * k + 3
        span = m
    else:
        want_len = 8 * m + 1
        base = 4 * k * k - 6 * k + 5
        span = 8 * m
    if len(perm) != want_len:
        raise LengthMismatch(f"mode {mode} with m={m} needs length {want_len}")

    tag = mode  # condition names A1..A5 or B1..B5
    conds = {f"{tag}1": set(perm) == set(range(base, base + span + 1))}
    n = len(perm)
    if dec is None:
        on_lower_last = on_lower_first = False
        upper_inc = lower_dec = medium_tail = False
    else:
        on_lower_last = n in dec.lower_positions
        on_lower_first = 1 in dec.lower_positions
        upper_inc = _increasing(dec.upper_values)
        lower_dec = _decreasing(dec.lower_values)
        mv = dec.medium_values
        medium_tail = len(mv) < 2 or mv[-2] < mv[-1]
    if mode == _MODE_A:
        conds[f"{tag}2"] = on_lower_last
    else:
        conds[f"{tag}2"] = on_lower_first and on_lower_last
    conds[f"{tag}3"] = upper_inc
    conds[f"{tag}4"] = lower_dec
    conds[f"{tag}5"] = medium_tail
    return ConditionReport(mode, conds)
