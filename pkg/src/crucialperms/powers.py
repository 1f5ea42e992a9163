"""Detection of k-power factors and counting of consecutive patterns.

A k-power is a concatenation X_1 X_2 ... X_k of k blocks of a common
length d >= 2 that are pairwise order-isomorphic.  A permutation is
k-power-free when none of its contiguous factors is a k-power.  Since
order isomorphism is transitive, it suffices to compare adjacent blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Perm, normalize


class BadExponent(ValueError):
    """The exponent of a power must be at least 2."""


@dataclass(frozen=True)
class PowerWitness:
    """Location of a k-power factor: blocks of length ``block_length``
    starting at 1-based position ``start``."""

    start: int
    block_length: int
    exponent: int
    block_pattern: Perm

    @property
    def end(self) -> int:
        """1-based position of the last symbol of the power."""
        return self.start + self.exponent * self.block_length - 1


def _adjacent_blocks_isomorphic(perm: Sequence[int], s0: int, d: int, k: int) -> bool:
    # s0 is 0-based; compares each block with the next, all index pairs,
    # bailing out at the first sign mismatch.
    for b in range(k - 1):
        x = s0 + b * d
        y = x + d
        for i in range(d - 1):
            pi = perm[x + i]
            qi = perm[y + i]
            for j in range(i + 1, d):
                if (pi < perm[x + j]) != (qi < perm[y + j]):
                    return False
    return True


def find_k_power(perm: Sequence[int], k: int) -> PowerWitness | None:
    """First k-power factor of ``perm``, or None.

    The scan runs over ascending start positions and, within a start, over
    ascending block lengths, so the returned witness is deterministic:
    smallest ``start``, then smallest ``block_length``.

    >>> find_k_power([4, 6, 1, 5, 2, 3], 3)
    PowerWitness(start=1, block_length=2, exponent=3, block_pattern=(1, 2))
    """
    if k < 2:
        raise BadExponent(f"exponent must be >= 2, got {k}")
    perm = tuple(perm)
    n = len(perm)
    for start in range(1, n + 1):
        dmax = (n - start + 1) // k
        for d in range(2, dmax + 1):
            if _adjacent_blocks_isomorphic(perm, start - 1, d, k):
                block = perm[start - 1 : start - 1 + d]
                return PowerWitness(start, d, k, normalize(block))
    return None


def is_k_power_free(perm: Sequence[int], k: int) -> bool:
    """True when no factor of ``perm`` is a k-power."""
    return find_k_power(perm, k) is None


def witness_valid(perm: Sequence[int], witness: PowerWitness) -> bool:
    """Re-verify a witness: the claimed blocks exist, are pairwise adjacent
    order-isomorphic, and match the recorded block pattern."""
    perm = tuple(perm)
    n = len(perm)
    start, d, k = witness.start, witness.block_length, witness.exponent
    if k < 2 or d < 2 or start < 1 or witness.end > n:
        return False
    if not _adjacent_blocks_isomorphic(perm, start - 1, d, k):
        return False
    return normalize(perm[start - 1 : start - 1 + d]) == witness.block_pattern


def count_factor_patterns(perm: Sequence[int], pattern: Sequence[int]) -> int:
    """Number of contiguous factors of ``perm`` order-isomorphic to ``pattern``.

    >>> count_factor_patterns((12, 13, 14, 9, 7, 8, 10, 11, 4, 2, 3, 5, 6, 1), (2, 3, 1))
    3
    """
    pat = normalize(pattern)
    w = len(pat)
    if w < 1:
        raise ValueError("pattern must be nonempty")
    perm = tuple(perm)
    count = 0
    for i in range(len(perm) - w + 1):
        if normalize(perm[i : i + w]) == pat:
            count += 1
    return count
