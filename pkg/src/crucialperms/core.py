"""Primitives for permutations of distinct integers.

A permutation here is any finite sequence of pairwise distinct integers;
only the relative order of the values matters.  Functions accept arbitrary
integer sequences and return plain tuples.  A *pattern* is the canonical
representative of an order-isomorphism class: a permutation whose values
are exactly 1..n.

All positions at public boundaries are 1-based.
"""

from __future__ import annotations

from typing import Sequence

Perm = tuple[int, ...]

RIGHT = "right"
LEFT = "left"
SIDES = (RIGHT, LEFT)


class DuplicateSymbol(ValueError):
    """A sequence repeats a value and therefore is not a permutation."""

    def __init__(self, first: int, second: int, value: int):
        super().__init__(f"symbol {value} appears at positions {first} and {second}")
        self.first = first
        self.second = second
        self.value = value


class ZeroScale(ValueError):
    """affine_map was called with scale 0, which does not preserve distinctness."""


class OutOfRange(ValueError):
    """A 1-based position or window does not fit inside the permutation."""


def validate_permutation(symbols: Sequence[int]) -> Perm:
    """Return ``symbols`` as a tuple, or raise DuplicateSymbol.

    >>> validate_permutation([3, 1, 2])
    (3, 1, 2)
    """
    out = tuple(symbols)
    seen: dict[int, int] = {}
    for pos, value in enumerate(out, start=1):
        if value in seen:
            raise DuplicateSymbol(seen[value], pos, value)
        seen[value] = pos
    return out


def normalize(perm: Sequence[int]) -> Perm:
    """Replace each symbol by its rank, giving the pattern of ``perm``.

    The result uses the values 1..n and is order-isomorphic to the input.
    Normalizing is idempotent.

    >>> normalize([1, 5, 9, 2])
    (1, 3, 4, 2)
    >>> normalize([28, 26, 27, 29])
    (3, 1, 2, 4)
    """
    rank = {v: r for r, v in enumerate(sorted(perm), start=1)}
    return tuple(rank[v] for v in perm)


def is_order_isomorphic(p: Sequence[int], q: Sequence[int]) -> bool:
    """True when ``p`` and ``q`` have equal length and identical relative order.

    Equivalent to comparing every pair of positions by sign, but computed
    through rank normalization.

    >>> is_order_isomorphic([9, 1, 4], [7, 2, 5])
    True
    >>> is_order_isomorphic([1, 2], [2, 1])
    False
    """
    p = tuple(p)
    q = tuple(q)
    return len(p) == len(q) and normalize(p) == normalize(q)


def reverse(perm: Sequence[int]) -> Perm:
    """The symbols of ``perm`` read right to left."""
    return tuple(reversed(tuple(perm)))


def affine_map(perm: Sequence[int], scale: int, offset: int) -> Perm:
    """Apply ``x -> scale*x + offset`` to every symbol.

    ``scale`` must be nonzero so that distinctness (and, up to sign, the
    relative order) is preserved.

    >>> affine_map([4, 2, 3, 5, 6], 2, -1)
    (7, 3, 5, 9, 11)
    """
    if scale == 0:
        raise ZeroScale("scale must be nonzero")
    return tuple(scale * v + offset for v in perm)


def complement(perm: Sequence[int]) -> Perm:
    """Flip the pattern of ``perm`` upside down: rank r becomes n + 1 - r.

    >>> complement([2, 4, 1, 3])
    (3, 1, 4, 2)
    """
    base = normalize(perm)
    n = len(base)
    return tuple(n + 1 - v for v in base)


def factor_at(perm: Sequence[int], start: int, length: int) -> Perm:
    """The contiguous factor of ``perm`` at 1-based position ``start``.

    >>> factor_at((12, 13, 14, 9, 7), 2, 3)
    (13, 14, 9)
    """
    perm = tuple(perm)
    if length < 0 or start < 1 or start + length - 1 > len(perm):
        raise OutOfRange(
            f"factor [{start}, {start + length - 1}] does not fit in length {len(perm)}"
        )
    return perm[start - 1 : start - 1 + length]


def extensions(perm: Sequence[int], side: str = RIGHT) -> tuple[Perm, ...]:
    """All one-symbol extensions of ``perm`` on the given side, as patterns.

    There are exactly n + 1 of them up to order isomorphism, one per rank
    the new symbol can take; they are returned in rank order 1..n+1.  Each
    returned pattern has its length-n prefix (side ``"right"``) or suffix
    (side ``"left"``) order-isomorphic to ``perm``.

    >>> extensions([1, 3, 2])[2]
    (1, 4, 2, 3)
    """
    if side not in SIDES:
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")
    base = normalize(perm)
    n = len(base)
    out = []
    for rank in range(1, n + 2):
        shifted = tuple(v + 1 if v >= rank else v for v in base)
        if side == RIGHT:
            out.append(shifted + (rank,))
        else:
            out.append((rank,) + shifted)
    return tuple(out)
