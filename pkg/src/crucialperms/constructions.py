"""Builders for the crucial and bicrucial k-power-free permutations.

The right-crucial family is assembled from small blocks: an ascending run
``T`` at the top of the value range, k-1 translated copies of a fixed
(2k-1)-pattern ``N`` descending through the middle values, and a final 1.
Appending a square-free head built by the high-medium-low composition
yields arbitrarily long right-crucial permutations.  The bicrucial family
glues a left-crucial prefix ``P``, the interior of a square-free middle
block ``H``, and a right-crucial suffix ``S``.

All builders validate their postconditions (lengths, symbol windows,
square-freeness or condition families, order-isomorphism relations)
unless ``validate=False`` is passed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Perm, is_order_isomorphic, normalize, reverse
from .powers import find_k_power
from .levels import (
    DESCENT_ASCENT,
    LAST_ASCENT,
    ROLE_CYCLE,
    NoValidPhase,
    UnsatisfiableConstraint,
    check_conditions,
    hml_compose,
    level_decompose,
    square_free_generate,
)

KINDS = (
    "T", "N", "Q", "W", "Rk", "Rmk", "F", "Fprime",
    "Rtilde", "Pmk", "Smk", "H", "Hpp", "Bmk",
)


class BadParameters(ValueError):
    """Construction parameters out of range or inconsistent with the kind."""


class GenerationFailed(RuntimeError):
    """A builder could not produce output meeting its postconditions."""


def _check_k(k: int) -> None:
    if k < 3:
        raise BadParameters(f"k must be >= 3, got {k}")


def _check_m(m: int) -> None:
    if m < 1:
        raise BadParameters(f"m must be >= 1, got {m}")


def t_block(k: int, m: int | None = None) -> Perm:
    """Ascending run of length 2k-3 at the top of the base value range.

    With ``m`` given, all symbols after the first are shifted up by m,
    opening a value gap right above the first symbol.
    """
    _check_k(k)
    lo = 2 * k * k - 3 * k + 3
    hi = 2 * k * k - k - 1
    if m is None:
        return tuple(range(lo, hi + 1))
    _check_m(m)
    return (lo,) + tuple(v + m for v in range(lo + 1, hi + 1))


def n_block(k: int, i: int) -> Perm:
    """The i-th translated copy of the (2k-1)-pattern 3 1 2 4 5 ... (2k-1).

    Copies i = 1..k-1 tile the values 2..(k-1)(2k-1)+1 without overlap.
    """
    _check_k(k)
    if not 1 <= i <= k - 1:
        raise BadParameters(f"i must be in 1..{k - 1}, got {i}")
    base = (3, 1, 2) + tuple(range(4, 2 * k))
    offset = 1 + (i - 1) * (2 * k - 1)
    return tuple(v + offset for v in base)


def q_block(m: int, k: int) -> Perm:
    """Descending run of length 2k-4 through the high even values."""
    _check_k(k)
    _check_m(m)
    top = 4 * k * k - 6 * k + 8 * m + 4 * k - 4
    bottom = 4 * k * k - 6 * k + 8 * m + 6
    return tuple(range(top, bottom - 1, -2))


def w_block(m: int, k: int) -> Perm:
    """Ascending run of length 2k-4 through the high odd values."""
    _check_k(k)
    _check_m(m)
    lo = 4 * k * k - 6 * k + 8 * m + 7
    hi = 4 * k * k - 6 * k + 8 * m + 4 * k - 3
    return tuple(range(lo, hi + 1, 2))


def r_perm(k: int, m: int | None = None, validate: bool = True) -> Perm:
    """The right-crucial core of length (k-1)(2k+1).

    Concatenates the T block, the N blocks from copy k-1 down to copy 1,
    and a final 1.  With ``m`` the gapped T variant is used; the result is
    order-isomorphic to the ungapped core.
    """
    out = t_block(k, m)
    for i in range(k - 1, 0, -1):
        out += n_block(k, i)
    out += (1,)
    if validate:
        want = (k - 1) * (2 * k + 1)
        if len(out) != want:
            raise GenerationFailed(f"core length {len(out)}, wanted {want}")
        if m is None:
            if set(out) != set(range(1, want + 1)):
                raise GenerationFailed("core symbols are not 1..(k-1)(2k+1)")
        elif not is_order_isomorphic(out, r_perm(k, validate=False)):
            raise GenerationFailed("gapped core is not isomorphic to the core")
    return out


def f_perm(m: int, k: int, validate: bool = True) -> tuple[Perm, Perm]:
    """Square-free head block of length m+1 and its length-m prefix.

    The head occupies the m+1 values starting at 2k^2-3k+3, ends on its
    lower level (hence with its minimum), keeps the upper level increasing
    and the lower level decreasing, and the last two medium symbols
    ascend.  Deterministic for fixed (m, k).
    """
    _check_k(k)
    _check_m(m)
    n = m + 1
    first_role = ROLE_CYCLE[(1 - n) % 4]  # puts the last position on the lower level
    mids = sum(1 for p in range(n) if ((1 - n) % 4 + p) % 4 in (1, 3))
    try:
        seed = square_free_generate(mids, LAST_ASCENT, validate=False)
        full = hml_compose(seed, first_role, n, value_base=2 * k * k - 3 * k + 3,
                           validate=validate)
    except (UnsatisfiableConstraint, NoValidPhase) as exc:
        raise GenerationFailed(f"head block for m={m}, k={k}: {exc}") from exc
    if validate:
        report = check_conditions(full, "A", m=m, k=k)
        if not report.passed:
            raise GenerationFailed(
                f"head block fails conditions {report.conditions}"
            )
    return full, full[:-1]


def rtilde_perm(m: int, k: int, validate: bool = True) -> Perm:
    """Right-crucial permutation of length m + (k-1)(2k+1): head prefix
    followed by the gapped core."""
    _, prefix = f_perm(m, k, validate=validate)
    out = prefix + r_perm(k, m, validate=validate)
    if validate:
        want = m + (k - 1) * (2 * k + 1)
        if set(out) != set(range(1, want + 1)) or len(out) != want:
            raise GenerationFailed("head and core do not tile 1..n")
    return out


def ps_perms(m: int, k: int, validate: bool = True) -> tuple[Perm, Perm]:
    """The left-crucial prefix P and right-crucial suffix S of the
    bicrucial construction, of length (k-1)(2k+1) each.

    P runs through the even values (reversed doubled N blocks) and ends
    just above the odd range; S mirrors it through the odd values.  P is
    order-isomorphic to the reversed core, S to the core itself.
    """
    _check_k(k)
    _check_m(m)
    p: Perm = (2,)
    for i in range(1, k):
        p += tuple(2 * v for v in reverse(n_block(k, i)))
    p += q_block(m, k) + (4 * k * k - 6 * k + 5 + 2 * m,)
    s: Perm = (4 * k * k - 6 * k + 5,) + w_block(m, k)
    for i in range(k - 1, 0, -1):
        s += tuple(2 * v - 1 for v in n_block(k, i))
    s += (1,)
    if validate:
        core = r_perm(k, validate=False)
        if not is_order_isomorphic(s, core):
            raise GenerationFailed("suffix block is not isomorphic to the core")
        if not is_order_isomorphic(p, reverse(core)):
            raise GenerationFailed("prefix block is not isomorphic to the reversed core")
    return p, s


def h_perm(m: int, k: int, validate: bool = True) -> tuple[Perm, Perm]:
    """Square-free middle block of length 8m+1 and its interior.

    Occupies the 8m+1 values starting at 4k^2-6k+5.  Both ends sit on the
    lower level, so the block starts at the top of its lower value range
    (4k^2-6k+5+2m) and ends at the bottom (4k^2-6k+5).  The interior drops
    both end symbols.  Deterministic for fixed (m, k).
    """
    _check_k(k)
    _check_m(m)
    n = 8 * m + 1
    base = 4 * k * k - 6 * k + 5
    try:
        seed = square_free_generate(4 * m, DESCENT_ASCENT, validate=False)
        full = hml_compose(seed, "lower", n, value_base=base, validate=validate)
    except (UnsatisfiableConstraint, NoValidPhase) as exc:
        raise GenerationFailed(f"middle block for m={m}, k={k}: {exc}") from exc
    if validate:
        report = check_conditions(full, "B", m=m, k=k)
        if not report.passed:
            raise GenerationFailed(f"middle block fails conditions {report.conditions}")
        if full[0] != base + 2 * m or full[-1] != base:
            raise GenerationFailed("middle block ends at the wrong values")
        mv = level_decompose(full).medium_values
        if not mv[0] > mv[1]:
            raise GenerationFailed("medium level does not open with a descent")
    return full, full[1:-1]


def b_perm(m: int, k: int, validate: bool = True) -> Perm:
    """Bicrucial permutation of length 8m-1 + 2(k-1)(2k+1): prefix block,
    middle-block interior, suffix block."""
    p, s = ps_perms(m, k, validate=validate)
    _, interior = h_perm(m, k, validate=validate)
    out = p + interior + s
    if validate:
        want = 8 * m - 1 + 2 * (k - 1) * (2 * k + 1)
        if len(out) != want or set(out) != set(range(1, want + 1)):
            raise GenerationFailed("blocks do not tile 1..n")
    return out


@dataclass(frozen=True)
class ConstructionSpec:
    """Parsed request for one named construction."""

    kind: str
    k: int
    m: int | None = None
    i: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadParameters(f"unknown construction {self.kind!r}")
        _check_k(self.k)
        needs_m = self.kind in (
            "Q", "W", "Rmk", "F", "Fprime", "Rtilde", "Pmk", "Smk", "H", "Hpp", "Bmk"
        )
        if needs_m and self.m is None:
            raise BadParameters(f"construction {self.kind} requires m")
        if self.m is not None:
            if self.kind in ("N", "Rk"):
                raise BadParameters(f"construction {self.kind} does not take m")
            _check_m(self.m)
        if self.kind == "N":
            if self.i is None:
                raise BadParameters("construction N requires i")
            if not 1 <= self.i <= self.k - 1:
                raise BadParameters(f"i must be in 1..{self.k - 1}, got {self.i}")
        elif self.i is not None:
            raise BadParameters(f"construction {self.kind} does not take i")


def build(spec: ConstructionSpec, validate: bool = True) -> Perm:
    """Build the single permutation named by ``spec``."""
    kind, k, m, i = spec.kind, spec.k, spec.m, spec.i
    if kind == "T":
        return t_block(k, m)
    if kind == "N":
        assert i is not None
        return n_block(k, i)
    assert m is not None or kind == "Rk"
    if kind == "Q":
        return q_block(m, k)
    if kind == "W":
        return w_block(m, k)
    if kind == "Rk":
        return r_perm(k, validate=validate)
    if kind == "Rmk":
        return r_perm(k, m, validate=validate)
    if kind == "F":
        return f_perm(m, k, validate=validate)[0]
    if kind == "Fprime":
        return f_perm(m, k, validate=validate)[1]
    if kind == "Rtilde":
        return rtilde_perm(m, k, validate=validate)
    if kind == "Pmk":
        return ps_perms(m, k, validate=validate)[0]
    if kind == "Smk":
        return ps_perms(m, k, validate=validate)[1]
    if kind == "H":
        return h_perm(m, k, validate=validate)[0]
    if kind == "Hpp":
        return h_perm(m, k, validate=validate)[1]
    if kind == "Bmk":
        return b_perm(m, k, validate=validate)
    raise BadParameters(f"unknown construction {kind!r}")
