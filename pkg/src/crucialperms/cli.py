"""Command-line interface.

Subcommands:

* ``gen``      build one of the named constructions and print it
* ``verify``   decide cruciality of a permutation and report per-extension witnesses
* ``levels``   print the lower/medium/upper decomposition of a permutation
* ``counts``   count factors order-isomorphic to given patterns
* ``search``   exhaustively scan a length for crucial patterns

Permutations are read as whitespace- or comma-separated integers, from
arguments, a file, or stdin.  Machine-readable output is JSON on stdout;
progress and diagnostics go to stderr.  Exit status 0 means the verdict
was true or the search found something, 1 means false or empty, 2 means
the invocation or input was invalid.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import constructions, cruciality, levels, powers, search
from .core import LEFT, RIGHT, DuplicateSymbol, OutOfRange, Perm, validate_permutation

_TOKEN = re.compile(r"[^\s,]+")

DEFAULT_COUNT_PATTERNS = ((3, 2, 1), (3, 1, 2), (2, 3, 1), (1, 3, 2), (2, 1, 3))


class InputError(ValueError):
    """Unparsable or invalid user input, reported with its location."""


def parse_symbols(text: str, source: str = "input") -> tuple[int, ...]:
    """Parse whitespace/comma separated integers, locating any bad token."""
    symbols = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for match in _TOKEN.finditer(line):
            token = match.group()
            try:
                symbols.append(int(token))
            except ValueError:
                raise InputError(
                    f"{source}: line {lineno}, column {match.start() + 1}: "
                    f"not an integer: {token!r}"
                ) from None
    if not symbols:
        raise InputError(f"{source}: no symbols given")
    return tuple(symbols)


def parse_pattern(text: str) -> tuple[int, ...]:
    """Parse a pattern given either compactly (``321``) or separated."""
    stripped = text.strip()
    if stripped.isdigit() and len(stripped) > 1:
        return tuple(int(ch) for ch in stripped)
    return parse_symbols(text, source="pattern")


def _read_subject(args) -> Perm:
    if args.symbols:
        raw = parse_symbols(" ".join(args.symbols), source="argument")
    elif args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            raw = parse_symbols(fh.read(), source=args.file)
    else:
        raw = parse_symbols(sys.stdin.read(), source="stdin")
    try:
        return validate_permutation(raw)
    except DuplicateSymbol as exc:
        raise InputError(f"not a permutation: {exc}") from exc


def _witness_dict(witness: powers.PowerWitness | None):
    if witness is None:
        return None
    return {
        "start": witness.start,
        "block_length": witness.block_length,
        "exponent": witness.exponent,
        "block_pattern": list(witness.block_pattern),
    }


def _extension_rows(table):
    return [
        {
            "rank": outcome.rank,
            "extension": list(outcome.extension),
            "witness": _witness_dict(outcome.witness),
        }
        for outcome in table
    ]


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_gen(args) -> int:
    spec = constructions.ConstructionSpec(args.construction, args.k, m=args.m, i=args.i)
    perm = constructions.build(spec)
    if args.format == "json":
        _emit(
            {
                "kind": spec.kind,
                "k": spec.k,
                "m": spec.m,
                "i": spec.i,
                "length": len(perm),
                "values": list(perm),
            }
        )
    else:
        print(" ".join(str(v) for v in perm))
    return 0


def cmd_verify(args) -> int:
    subject = _read_subject(args)
    if args.side == search.BI:
        report = cruciality.check_bicrucial(subject, args.k)
    else:
        report = cruciality.check_crucial(subject, args.k, args.side)
    if args.format == "json":
        per_extension = {}
        if report.right_extensions is not None:
            per_extension[RIGHT] = _extension_rows(report.right_extensions)
        if report.left_extensions is not None:
            per_extension[LEFT] = _extension_rows(report.left_extensions)
        _emit(
            {
                "subject": list(report.subject),
                "k": report.k,
                "side": report.side,
                "power_free": report.power_free,
                "per_extension": per_extension,
                "verdict": report.verdict,
            }
        )
    else:
        name = {RIGHT: "right-crucial", LEFT: "left-crucial", search.BI: "bicrucial"}
        print(f"{len(report.subject)} symbols, k={report.k}")
        print(f"  {report.k}-power-free: {'yes' if report.power_free else 'no'}")
        for label, table in ((RIGHT, report.right_extensions), (LEFT, report.left_extensions)):
            if table is None:
                continue
            witnessed = sum(1 for o in table if o.witness is not None)
            print(f"  {label} extensions with a {report.k}-power: {witnessed}/{len(table)}")
        print(f"  {name[report.side]}: {'yes' if report.verdict else 'no'}")
    return 0 if report.verdict else 1


def cmd_levels(args) -> int:
    subject = _read_subject(args)
    try:
        deco = levels.level_decompose(subject)
    except levels.HasLengthFourSquare as exc:
        print(f"no level decomposition: {exc}", file=sys.stderr)
        return 1
    _emit(
        {
            "phase": deco.phase,
            "lower_positions": list(deco.lower_positions),
            "medium_positions": list(deco.medium_positions),
            "upper_positions": list(deco.upper_positions),
            "lower_values": list(deco.lower_values),
            "medium_values": list(deco.medium_values),
            "upper_values": list(deco.upper_values),
        }
    )
    return 0


def cmd_counts(args) -> int:
    subject = _read_subject(args)
    patterns = [parse_pattern(p) for p in args.pattern] or list(DEFAULT_COUNT_PATTERNS)
    rows = []
    for pattern in patterns:
        rows.append(
            {
                "pattern": list(pattern),
                "count": powers.count_factor_patterns(subject, pattern),
            }
        )
    _emit({"subject": list(subject), "pattern_counts": rows})
    return 0


def cmd_search(args) -> int:
    checkpoint = None
    if args.resume:
        if args.checkpoint is None:
            raise InputError("--resume requires --checkpoint")
        checkpoint = search.load_checkpoint(args.checkpoint)
        for name, given in (("k", args.k), ("n", args.n), ("side", args.side)):
            stored = getattr(checkpoint, name)
            if given is not None and given != stored:
                raise InputError(
                    f"--{name} {given} contradicts checkpoint ({name}={stored})"
                )
        k, n, side = checkpoint.k, checkpoint.n, checkpoint.side
    else:
        if args.k is None or args.n is None:
            raise InputError("search needs --k and --n (or --resume)")
        k, n, side = args.k, args.n, args.side or RIGHT
    if k == 3 and n >= 11 and not args.long_run:
        raise InputError(
            f"a k=3 scan at length {n} can run for hours; pass --long-run to confirm"
        )
    if args.jobs > 1 and (args.checkpoint is not None or args.node_budget is not None):
        raise InputError("--jobs > 1 cannot be combined with --checkpoint or --node-budget")

    def progress(cp: search.SearchCheckpoint) -> None:
        if args.checkpoint is not None:
            search.save_checkpoint(cp, args.checkpoint)
        print(
            f"search k={k} n={n} {side}: {cp.nodes_visited} nodes, "
            f"{cp.leaves_tested} leaves, {len(cp.found)} found"
            + (" (complete)" if cp.complete else ""),
            file=sys.stderr,
        )

    findings = search.scan_crucial(
        n,
        k,
        side,
        checkpoint,
        use_symmetry=not args.no_symmetry,
        node_budget=args.node_budget,
        checkpoint_interval=args.checkpoint_interval,
        on_checkpoint=None if args.jobs > 1 else progress,
        jobs=args.jobs,
    )
    if args.checkpoint is not None:
        search.save_checkpoint(findings.checkpoint, args.checkpoint)
    _emit(
        {
            "k": findings.k,
            "n": findings.n,
            "side": findings.side,
            "found": [list(p) for p in findings.found],
            "nodes_visited": findings.nodes_visited,
            "leaves_tested": findings.leaves_tested,
            "complete": findings.complete,
        }
    )
    return 0 if findings.found else 1


def _add_subject_arguments(sub) -> None:
    sub.add_argument("symbols", nargs="*", help="the permutation, e.g. 3 2 5 6 4 1 7")
    sub.add_argument("--file", help="read the permutation from this file instead")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crucialperms",
        description="Construct, verify and search crucial power-free permutations.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="build a named construction")
    gen.add_argument(
        "--construction",
        required=True,
        choices=constructions.KINDS,
        help="which family to build",
    )
    gen.add_argument("--k", type=int, required=True, help="power exponent (>= 3)")
    gen.add_argument("--m", type=int, help="size parameter, where the family takes one")
    gen.add_argument("--i", type=int, help="block index for construction N (1..k-1)")
    gen.add_argument("--format", choices=("text", "json"), default="text")
    gen.set_defaults(func=cmd_gen)

    verify = commands.add_parser("verify", help="check cruciality of a permutation")
    verify.add_argument("--k", type=int, required=True, help="power exponent (>= 2)")
    verify.add_argument("--side", choices=(RIGHT, LEFT, search.BI), default=RIGHT)
    verify.add_argument("--format", choices=("json", "text"), default="json")
    _add_subject_arguments(verify)
    verify.set_defaults(func=cmd_verify)

    lvl = commands.add_parser("levels", help="lower/medium/upper decomposition")
    _add_subject_arguments(lvl)
    lvl.set_defaults(func=cmd_levels)

    counts = commands.add_parser("counts", help="count factors matching patterns")
    counts.add_argument(
        "--pattern",
        action="append",
        default=[],
        help="pattern to count, e.g. 321 or '3 2 1' "
        "(repeatable; default: 321 312 231 132 213)",
    )
    _add_subject_arguments(counts)
    counts.set_defaults(func=cmd_counts)

    scan = commands.add_parser("search", help="scan a length for crucial patterns")
    scan.add_argument("--k", type=int, help="power exponent (>= 2)")
    scan.add_argument("--n", type=int, help="pattern length to scan")
    scan.add_argument("--side", choices=(RIGHT, LEFT, search.BI))
    scan.add_argument("--checkpoint", help="save progress to (and resume from) this file")
    scan.add_argument(
        "--resume",
        action="store_true",
        help="continue from the --checkpoint file instead of starting over",
    )
    scan.add_argument("--jobs", type=int, default=1, help="worker processes")
    scan.add_argument(
        "--no-symmetry",
        action="store_true",
        help="do not halve the tree by complement symmetry",
    )
    scan.add_argument(
        "--node-budget",
        type=int,
        help="stop after this many additional node visits and checkpoint",
    )
    scan.add_argument(
        "--checkpoint-interval",
        type=int,
        default=1_000_000,
        help="node visits between progress reports and checkpoint saves",
    )
    scan.add_argument(
        "--long-run",
        action="store_true",
        help="confirm a scan that is expected to take hours",
    )
    scan.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (
        InputError,
        DuplicateSymbol,
        OutOfRange,
        powers.BadExponent,
        constructions.BadParameters,
        constructions.GenerationFailed,
        search.CheckpointCorrupt,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
