"""Pruned exhaustive search for k-power-free and crucial patterns.

Patterns of length n are enumerated as leaves of the insertion tree: a
node at depth d is a pattern of length d, and its children append a new
rightmost symbol of each possible rank (existing values at or above the
rank shift up by one).  A child is explored only when it stays
k-power-free, which needs checking only powers that end at the new last
position.  At the leaves, cruciality is decided by testing every
extension class on the requested side; because the leaf itself is
power-free, a right extension contains a k-power exactly when one ends
at its last position, and a left extension exactly when one starts at
its first.

The scan supports complement symmetry (explore only patterns whose
second symbol rises, close the findings under complementation),
checkpoint/resume with a JSON-serializable frontier, node budgets, and a
process-parallel mode that splits the tree at a fixed depth.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import LEFT, RIGHT, Perm, complement, validate_permutation
from .powers import BadExponent, _adjacent_blocks_isomorphic

BI = "bi"
SCAN_SIDES = (RIGHT, LEFT, BI)

FORMAT_VERSION = 1
_SPLIT_DEPTH = 4


class CheckpointCorrupt(ValueError):
    """A checkpoint fails structural validation or replay."""


def _push(values: list[int], rank: int) -> None:
    for i, v in enumerate(values):
        if v >= rank:
            values[i] = v + 1
    values.append(rank)


def _pop(values: list[int]) -> int:
    rank = values.pop()
    for i, v in enumerate(values):
        if v > rank:
            values[i] = v - 1
    return rank


def _ends_with_power(values: list[int], k: int) -> bool:
    """True when some k-power ends at the last position."""
    n = len(values)
    for d in range(2, n // k + 1):
        if _adjacent_blocks_isomorphic(values, n - k * d, d, k):
            return True
    return False


def _starts_with_power(values: list[int], k: int) -> bool:
    """True when some k-power starts at the first position."""
    n = len(values)
    for d in range(2, n // k + 1):
        if _adjacent_blocks_isomorphic(values, 0, d, k):
            return True
    return False


def _leaf_is_crucial(cur: list[int], k: int, side: str) -> bool:
    """Cruciality test for a k-power-free pattern of full length.

    Extensions are tried from the new maximum downward: extreme new
    symbols are the likeliest to leave the pattern power-free, so
    non-crucial leaves are rejected early.
    """
    n = len(cur)
    if side in (RIGHT, BI):
        for rank in range(n + 1, 0, -1):
            _push(cur, rank)
            has_power = _ends_with_power(cur, k)
            _pop(cur)
            if not has_power:
                return False
    if side in (LEFT, BI):
        for rank in range(n + 1, 0, -1):
            ext = [rank] + [v + 1 if v >= rank else v for v in cur]
            if not _starts_with_power(ext, k):
                return False
    return True


@dataclass(frozen=True)
class FrontierState:
    """Resume point: the insertion ranks of the last visited node, and
    whether its subtree is still unexplored (``descend``) or finished."""

    path: tuple[int, ...]
    descend: bool


@dataclass(frozen=True)
class SearchCheckpoint:
    format_version: int
    k: int
    n: int
    side: str
    symmetry: bool
    frontier: FrontierState | None
    nodes_visited: int
    leaves_tested: int
    found: tuple[Perm, ...]
    complete: bool

    def to_json_dict(self) -> dict:
        frontier = None
        if self.frontier is not None:
            frontier = {"path": list(self.frontier.path), "descend": self.frontier.descend}
        return {
            "format_version": self.format_version,
            "k": self.k,
            "n": self.n,
            "side": self.side,
            "symmetry": self.symmetry,
            "frontier": frontier,
            "counters": {
                "nodes_visited": self.nodes_visited,
                "leaves_tested": self.leaves_tested,
            },
            "found": [list(p) for p in self.found],
            "complete": self.complete,
        }


def fresh_checkpoint(k: int, n: int, side: str = RIGHT, use_symmetry: bool = True) -> SearchCheckpoint:
    """Checkpoint describing a scan that has not visited anything yet."""
    _check_scan_args(n, k, side)
    return SearchCheckpoint(
        format_version=FORMAT_VERSION,
        k=k,
        n=n,
        side=side,
        symmetry=bool(use_symmetry) and n >= 2,
        frontier=FrontierState(path=(), descend=True),
        nodes_visited=0,
        leaves_tested=0,
        found=(),
        complete=False,
    )


def checkpoint_from_json_dict(data: dict) -> SearchCheckpoint:
    try:
        if data["format_version"] != FORMAT_VERSION:
            raise CheckpointCorrupt(
                f"unsupported format_version {data['format_version']!r}"
            )
        k, n, side = data["k"], data["n"], data["side"]
        symmetry = data["symmetry"]
        raw_frontier = data["frontier"]
        counters = data["counters"]
        nodes = counters["nodes_visited"]
        leaves = counters["leaves_tested"]
        raw_found = data["found"]
        complete = data["complete"]
    except (KeyError, TypeError) as exc:
        raise CheckpointCorrupt(f"missing or malformed field: {exc}") from exc
    if not (isinstance(k, int) and isinstance(n, int) and k >= 2 and n >= 1):
        raise CheckpointCorrupt(f"bad exponent/length pair ({k!r}, {n!r})")
    if side not in SCAN_SIDES:
        raise CheckpointCorrupt(f"bad side {side!r}")
    if not isinstance(symmetry, bool) or not isinstance(complete, bool):
        raise CheckpointCorrupt("symmetry and complete must be booleans")
    if not (isinstance(nodes, int) and isinstance(leaves, int) and nodes >= 0 and leaves >= 0):
        raise CheckpointCorrupt("counters must be nonnegative integers")
    frontier = None
    if raw_frontier is not None:
        try:
            path = tuple(raw_frontier["path"])
            descend = raw_frontier["descend"]
        except (KeyError, TypeError) as exc:
            raise CheckpointCorrupt(f"malformed frontier: {exc}") from exc
        if not isinstance(descend, bool) or not all(isinstance(r, int) for r in path):
            raise CheckpointCorrupt("malformed frontier")
        frontier = FrontierState(path=path, descend=descend)
    if complete and frontier is not None:
        raise CheckpointCorrupt("complete checkpoint must not carry a frontier")
    if not complete and frontier is None:
        raise CheckpointCorrupt("incomplete checkpoint must carry a frontier")
    found = []
    for item in raw_found:
        try:
            perm = validate_permutation(item)
        except (ValueError, TypeError) as exc:
            raise CheckpointCorrupt(f"bad found entry {item!r}: {exc}") from exc
        if len(perm) != n:
            raise CheckpointCorrupt(f"found entry {item!r} has length != {n}")
        found.append(perm)
    return SearchCheckpoint(
        format_version=FORMAT_VERSION,
        k=k,
        n=n,
        side=side,
        symmetry=symmetry,
        frontier=frontier,
        nodes_visited=nodes,
        leaves_tested=leaves,
        found=tuple(found),
        complete=complete,
    )


def save_checkpoint(checkpoint: SearchCheckpoint, path: str | os.PathLike) -> None:
    """Write a checkpoint atomically (temp file, then rename)."""
    path = os.fspath(path)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(checkpoint.to_json_dict(), fh, indent=2)
        fh.write("\n")
    os.replace(tmp, path)


def load_checkpoint(path: str | os.PathLike) -> SearchCheckpoint:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CheckpointCorrupt(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CheckpointCorrupt("checkpoint root must be an object")
    return checkpoint_from_json_dict(data)


def _first_child_rank(depth: int, symmetry: bool) -> int:
    return 2 if symmetry and depth == 1 else 1


def _restore_stack(checkpoint: SearchCheckpoint) -> tuple[list[int], list[int]]:
    """Replay a frontier into the (pattern, frames) DFS stack pair.

    frames[d] is the next child rank to try at depth d, so an ancestor
    that pushed rank r holds frame r + 1.
    """
    frontier = checkpoint.frontier
    if frontier is None:
        raise CheckpointCorrupt("cannot restore a completed checkpoint")
    path = frontier.path
    if len(path) > checkpoint.n:
        raise CheckpointCorrupt("frontier deeper than the target length")
    if frontier.descend and len(path) == checkpoint.n:
        raise CheckpointCorrupt("cannot descend below a full-length leaf")
    cur: list[int] = []
    for rank in path:
        depth = len(cur)
        if not _first_child_rank(depth, checkpoint.symmetry) <= rank <= depth + 1:
            raise CheckpointCorrupt(f"rank {rank} invalid at depth {depth + 1}")
        _push(cur, rank)
        if _ends_with_power(cur, checkpoint.k):
            raise CheckpointCorrupt(f"frontier prefix {tuple(cur)} is not power-free")
    frames = [rank + 1 for rank in path]
    if frontier.descend:
        frames.append(_first_child_rank(len(cur), checkpoint.symmetry))
    elif cur:
        _pop(cur)
    return cur, frames


class _ScanState:
    __slots__ = ("nodes", "leaves", "found")

    def __init__(self, nodes: int = 0, leaves: int = 0, found: tuple[Perm, ...] = ()):
        self.nodes = nodes
        self.leaves = leaves
        self.found = list(found)


def _run_dfs(
    cur: list[int],
    frames: list[int],
    state: _ScanState,
    *,
    n: int,
    k: int,
    side: str,
    symmetry: bool,
    max_depth: int | None = None,
    on_max_depth=None,
    stop_after: int | None = None,
    interval: int | None = None,
    snapshot=None,
) -> FrontierState | None:
    """Drive the DFS until exhaustion or budget stop.

    Returns None when the subtree is exhausted, otherwise the frontier at
    which the run stopped.  ``max_depth``/``on_max_depth`` truncate the
    tree for the parallel split; ``interval``/``snapshot`` emit periodic
    frontiers without stopping.
    """
    target = None if stop_after is None else state.nodes + stop_after
    while frames:
        rank = frames[-1]
        depth = len(cur)
        if rank > depth + 1:
            frames.pop()
            if cur:
                _pop(cur)
            continue
        frames[-1] = rank + 1
        _push(cur, rank)
        if _ends_with_power(cur, k):
            _pop(cur)
            continue
        state.nodes += 1
        at_leaf = len(cur) == n
        truncated = max_depth is not None and len(cur) == max_depth and not at_leaf
        if at_leaf:
            state.leaves += 1
            if _leaf_is_crucial(cur, k, side):
                state.found.append(tuple(cur))
        elif truncated and on_max_depth is not None:
            on_max_depth(tuple(cur))
        boundary = interval is not None and state.nodes % interval == 0
        exhausted = target is not None and state.nodes >= target
        if at_leaf or truncated:
            _pop(cur)
            frontier = FrontierState(tuple(f - 1 for f in frames), descend=False)
        else:
            frontier = FrontierState(tuple(f - 1 for f in frames), descend=True)
        if (boundary or exhausted) and snapshot is not None:
            snapshot(frontier, state)
        if exhausted:
            return frontier
        if not (at_leaf or truncated):
            frames.append(_first_child_rank(len(cur), symmetry))
    return None


@dataclass(frozen=True)
class SearchFindings:
    k: int
    n: int
    side: str
    found: tuple[Perm, ...]
    nodes_visited: int
    leaves_tested: int
    complete: bool
    checkpoint: SearchCheckpoint


def _check_scan_args(n: int, k: int, side: str) -> None:
    if k < 2:
        raise BadExponent(f"exponent must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"length must be >= 1, got {n}")
    if side not in SCAN_SIDES:
        raise ValueError(f"side must be one of {SCAN_SIDES}, got {side!r}")


def _final_found(state_found, symmetry: bool) -> tuple[Perm, ...]:
    closed = set(state_found)
    if symmetry:
        closed |= {complement(p) for p in state_found}
    return tuple(sorted(closed))


def _assemble(
    k: int, n: int, side: str, symmetry: bool, state: _ScanState, frontier: FrontierState | None
) -> SearchFindings:
    complete = frontier is None
    raw = tuple(state.found)
    checkpoint = SearchCheckpoint(
        format_version=FORMAT_VERSION,
        k=k,
        n=n,
        side=side,
        symmetry=symmetry,
        frontier=frontier,
        nodes_visited=state.nodes,
        leaves_tested=state.leaves,
        found=raw,
        complete=complete,
    )
    found = _final_found(raw, symmetry) if complete else tuple(sorted(set(raw)))
    return SearchFindings(k, n, side, found, state.nodes, state.leaves, complete, checkpoint)


def _subtree_worker(args) -> tuple[tuple[Perm, ...], int, int]:
    root, n, k, side = args
    cur = list(root)
    frames = [1]
    state = _ScanState()
    _run_dfs(cur, frames, state, n=n, k=k, side=side, symmetry=False)
    return tuple(state.found), state.nodes, state.leaves


def _scan_parallel(n: int, k: int, side: str, symmetry: bool, jobs: int) -> SearchFindings:
    roots: list[Perm] = []
    state = _ScanState()
    _run_dfs(
        [],
        [1],
        state,
        n=n,
        k=k,
        side=side,
        symmetry=symmetry,
        max_depth=_SPLIT_DEPTH,
        on_max_depth=roots.append,
    )
    tasks = [(root, n, k, side) for root in roots]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for found, nodes, leaves in pool.map(_subtree_worker, tasks):
            state.found.extend(found)
            state.nodes += nodes
            state.leaves += leaves
    return _assemble(k, n, side, symmetry, state, None)


def scan_crucial(
    n: int,
    k: int,
    side: str = RIGHT,
    checkpoint: SearchCheckpoint | None = None,
    *,
    use_symmetry: bool = True,
    node_budget: int | None = None,
    checkpoint_interval: int = 10_000_000,
    on_checkpoint=None,
    jobs: int = 1,
) -> SearchFindings:
    """Exhaustively find the k-crucial patterns of length n on ``side``.

    A ``checkpoint`` resumes an earlier run; its exponent, length, side
    and symmetry setting override the call's.  ``node_budget`` stops the
    scan after that many additional node visits, leaving a resumable
    checkpoint in the findings.  ``on_checkpoint`` receives a
    SearchCheckpoint every ``checkpoint_interval`` node visits and at
    every stop.  ``jobs`` > 1 splits the tree at a fixed depth across
    worker processes and is incompatible with checkpointing or budgets.
    """
    if checkpoint is not None:
        if (checkpoint.n, checkpoint.k, checkpoint.side) != (n, k, side):
            raise ValueError(
                "checkpoint was taken for "
                f"(n={checkpoint.n}, k={checkpoint.k}, side={checkpoint.side!r}), "
                f"not (n={n}, k={k}, side={side!r})"
            )
        symmetry = checkpoint.symmetry
    else:
        symmetry = bool(use_symmetry) and n >= 2
    _check_scan_args(n, k, side)
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    if jobs > 1:
        if checkpoint is not None or node_budget is not None or on_checkpoint is not None:
            raise ValueError("parallel scans do not support checkpoints or node budgets")
        if n <= _SPLIT_DEPTH:
            jobs = 1
        else:
            return _scan_parallel(n, k, side, symmetry, jobs)
    if checkpoint is None:
        checkpoint = fresh_checkpoint(k, n, side, use_symmetry=symmetry)
    if checkpoint.complete:
        state = _ScanState(checkpoint.nodes_visited, checkpoint.leaves_tested, checkpoint.found)
        return _assemble(k, n, side, symmetry, state, None)
    cur, frames = _restore_stack(checkpoint)
    state = _ScanState(checkpoint.nodes_visited, checkpoint.leaves_tested, checkpoint.found)

    def emit(frontier: FrontierState, st: _ScanState) -> None:
        if on_checkpoint is not None:
            on_checkpoint(
                SearchCheckpoint(
                    format_version=FORMAT_VERSION,
                    k=k,
                    n=n,
                    side=side,
                    symmetry=symmetry,
                    frontier=frontier,
                    nodes_visited=st.nodes,
                    leaves_tested=st.leaves,
                    found=tuple(st.found),
                    complete=False,
                )
            )

    frontier = _run_dfs(
        cur,
        frames,
        state,
        n=n,
        k=k,
        side=side,
        symmetry=symmetry,
        stop_after=node_budget,
        interval=checkpoint_interval,
        snapshot=emit,
    )
    findings = _assemble(k, n, side, symmetry, state, frontier)
    if frontier is None and on_checkpoint is not None:
        on_checkpoint(findings.checkpoint)
    return findings


def resume(
    checkpoint: SearchCheckpoint | str | os.PathLike, **kwargs
) -> SearchFindings:
    """Continue a scan from a checkpoint object or file."""
    if not isinstance(checkpoint, SearchCheckpoint):
        checkpoint = load_checkpoint(checkpoint)
    return scan_crucial(
        checkpoint.n, checkpoint.k, checkpoint.side, checkpoint, **kwargs
    )


def enumerate_power_free(n: int, k: int, visitor=None) -> int:
    """Count the k-power-free patterns of length n.

    ``visitor``, when given, is called with each such pattern in
    lexicographic order of insertion ranks.
    """
    _check_scan_args(n, k, RIGHT)
    count = 0

    def count_leaf(leaf: Perm) -> None:
        nonlocal count
        count += 1
        if visitor is not None:
            visitor(leaf)

    # Truncating at the target length turns the leaf handler into a plain
    # pattern visitor: no cruciality test runs.
    state = _ScanState()
    _run_dfs(
        [],
        [1],
        state,
        n=n + 1,
        k=k,
        side=RIGHT,
        symmetry=False,
        max_depth=n,
        on_max_depth=count_leaf,
    )
    return count
