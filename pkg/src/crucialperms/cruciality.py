"""Cruciality verdicts and factor-pair audits.

A k-power-free permutation is right-crucial when every one-symbol right
extension contains a k-power, left-crucial symmetrically, and bicrucial
when both hold.  Reports record, for each of the n+1 extension classes in
rank order, either the first k-power witness or the fact that the
extension is power-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import LEFT, RIGHT, OutOfRange, Perm, extensions, normalize, validate_permutation
from .powers import BadExponent, PowerWitness, find_k_power

BICRUCIAL = "bi"

V1_CONTAINS = "v1-contains"
V2_CONTAINS = "v2-contains"


@dataclass(frozen=True)
class ExtensionOutcome:
    """One extension class: the new symbol's rank, the extended pattern,
    and its first k-power witness (None when the extension is power-free)."""

    rank: int
    extension: Perm
    witness: PowerWitness | None


@dataclass(frozen=True)
class CrucialityReport:
    subject: Perm
    k: int
    side: str
    power_free: bool
    right_extensions: tuple[ExtensionOutcome, ...] | None
    left_extensions: tuple[ExtensionOutcome, ...] | None
    verdict: bool


def _extension_table(
    subject: Perm, k: int, side: str, via_suffix: int | None
) -> tuple[ExtensionOutcome, ...]:
    outcomes = []
    for rank, ext in enumerate(extensions(subject, side), start=1):
        witness = None
        if via_suffix is not None:
            if side == RIGHT:
                window = ext[-(via_suffix + 1):]
                shift = len(ext) - len(window)
            else:
                window = ext[: via_suffix + 1]
                shift = 0
            found = find_k_power(window, k)
            if found is not None:
                witness = PowerWitness(
                    found.start + shift, found.block_length, k, found.block_pattern
                )
        if witness is None:
            witness = find_k_power(ext, k)
        outcomes.append(ExtensionOutcome(rank, ext, witness))
    return tuple(outcomes)


def check_crucial(
    perm: Sequence[int], k: int, side: str = RIGHT, via_suffix: int | None = None
) -> CrucialityReport:
    """Decide whether ``perm`` is k-crucial on ``side``.

    The verdict is true iff ``perm`` is k-power-free and every extension
    on that side contains a k-power.  ``via_suffix`` is a fast path: only
    the trailing (side ``"right"``) or leading (side ``"left"``) window of
    that many symbols plus the new symbol is scanned first, with witness
    positions shifted back to the full extension, and a full scan as
    fallback.  For the shipped constructions the junction audits guarantee
    this agrees with the direct scan.
    """
    if k < 2:
        raise BadExponent(f"exponent must be >= 2, got {k}")
    if side not in (RIGHT, LEFT):
        raise ValueError(f"side must be {RIGHT!r} or {LEFT!r}, got {side!r}")
    subject = normalize(validate_permutation(perm))
    if via_suffix is not None and not 1 <= via_suffix <= len(subject):
        raise OutOfRange(f"window length {via_suffix} not in 1..{len(subject)}")
    power_free = find_k_power(subject, k) is None
    table = _extension_table(subject, k, side, via_suffix)
    verdict = power_free and all(o.witness is not None for o in table)
    right = table if side == RIGHT else None
    left = table if side == LEFT else None
    return CrucialityReport(subject, k, side, power_free, right, left, verdict)


def check_bicrucial(perm: Sequence[int], k: int) -> CrucialityReport:
    """Decide whether ``perm`` is k-bicrucial (crucial on both sides)."""
    right = check_crucial(perm, k, RIGHT)
    left = check_crucial(perm, k, LEFT)
    return CrucialityReport(
        right.subject,
        k,
        BICRUCIAL,
        right.power_free,
        right.right_extensions,
        left.left_extensions,
        right.verdict and left.verdict,
    )


@dataclass(frozen=True)
class FactorPairHit:
    """An adjacent pair of equal-length order-isomorphic factors:
    positions v1_start..v1_start+length-1 and the next ``length`` positions."""

    v1_start: int
    v2_start: int
    length: int

    def v1_covers(self, position: int) -> bool:
        return self.v1_start <= position < self.v1_start + self.length

    def v2_covers(self, position: int) -> bool:
        return self.v2_start <= position < self.v2_start + self.length


@dataclass(frozen=True)
class AuditResult:
    marker_position: int
    mode: str
    exponent: int
    hits: tuple[FactorPairHit, ...]


def lemma_factor_audit(
    perm: Sequence[int], marker_position: int, k: int, mode: str
) -> AuditResult:
    """Enumerate adjacent equal-length factor pairs V1 V2 touching a marker.

    Mode ``"v1-contains"`` keeps pairs whose first factor covers the
    marker position, ``"v2-contains"`` those whose second factor does.
    All block lengths >= 2 are tried; the returned hits are exactly the
    order-isomorphic pairs.  ``k`` is recorded for context (the audits
    back the block-pair steps of the cruciality arguments) but does not
    restrict the enumeration.
    """
    perm = validate_permutation(perm)
    n = len(perm)
    mode = mode.lower()
    if mode not in (V1_CONTAINS, V2_CONTAINS):
        raise ValueError(f"mode must be {V1_CONTAINS!r} or {V2_CONTAINS!r}")
    if not 1 <= marker_position <= n:
        raise OutOfRange(f"marker {marker_position} not in 1..{n}")
    hits = []
    for length in range(2, n // 2 + 1):
        if mode == V1_CONTAINS:
            starts = range(
                max(1, marker_position - length + 1),
                min(marker_position, n - 2 * length + 1) + 1,
            )
        else:
            starts = range(
                max(1, marker_position - 2 * length + 1),
                min(marker_position - length, n - 2 * length + 1) + 1,
            )
        for s in starts:
            a = perm[s - 1 : s - 1 + length]
            b = perm[s - 1 + length : s - 1 + 2 * length]
            if normalize(a) == normalize(b):
                hits.append(FactorPairHit(s, s + length, length))
    return AuditResult(marker_position, mode, k, tuple(hits))
