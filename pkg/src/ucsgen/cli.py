"""Command-line front end.

Modes:
  count      one report row for the given n (or for one shard of it)
  emit-reps  stream every canonical family, one per line
  report     rows for all universes 1..n

Sharding runs one residue per process; parallelism is orchestrated
outside (shell loops, make, a scheduler), and shard outputs are designed
to concatenate or sum back to the unsplit run.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .counts import build_report, build_reports, complement_family, emit_report
from .family import serialize_family, sparseness
from .generate import SplitSpec, enumerate_families
from .subsets import MAX_N, order_key


def _parse_split(text: str) -> SplitSpec:
    parts = text.split("/")
    if len(parts) not in (2, 3):
        raise ValueError("expected MOD/RES or MOD/RES/DEPTH")
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise ValueError("split fields must be integers") from None
    if len(numbers) == 2:
        numbers.append(2)
    return SplitSpec(numbers[0], numbers[1], numbers[2])


def _serialize_moore(f) -> str:
    masks = sorted((m for m in complement_family(f) if m), key=order_key)
    return ",".join(format(m, "x") for m in masks)


def _emit_reps(args, out) -> None:
    labeled = args.labeled
    moore = args.moore
    sparse_only = args.sparse_only

    def line_for(f, aut_size: int) -> None:
        if sparse_only and not sparseness(f).is_sparse:
            return
        text = _serialize_moore(f) if moore else serialize_family(f)
        if labeled:
            out.write(f"{aut_size} {text}\n")
        else:
            out.write(text + "\n")

    enumerate_families(args.n, line_for, args.split)


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ucsgen",
        description="Enumerate union-closed set families on small universes "
        "(one representative per isomorphism class) and derive "
        "Moore-family and sparse counts.",
    )
    parser.add_argument("--n", type=int, required=True, metavar="N",
                        help=f"universe size, 1..{MAX_N}")
    parser.add_argument("--mode", choices=("count", "emit-reps", "report"),
                        default="count")
    parser.add_argument("--split", type=str, default=None, metavar="MOD/RES[/DEPTH]",
                        help="process only the subtrees dealt to RES modulo MOD "
                        "at the given depth (default depth 2)")
    parser.add_argument("--labeled", action="store_true",
                        help="emit-reps: prefix each line with the automorphism count")
    parser.add_argument("--moore", action="store_true",
                        help="emit-reps: emit the complement (intersection-closed) family")
    parser.add_argument("--sparse-only", action="store_true",
                        help="emit-reps: only families with average member size <= n/2")
    parser.add_argument("--output", type=str, default=None, metavar="PATH",
                        help="write to PATH instead of standard output")
    parser.add_argument("--format", choices=("tsv", "text-table"), default="tsv",
                        help="table format for count and report modes")
    args = parser.parse_args(argv)

    if not 1 <= args.n <= MAX_N:
        parser.error(f"--n must be between 1 and {MAX_N}")
    if args.split is not None:
        try:
            args.split = _parse_split(args.split)
        except ValueError as exc:
            parser.error(f"bad --split: {exc}")
    if args.mode != "emit-reps" and (args.labeled or args.moore or args.sparse_only):
        parser.error("--labeled/--moore/--sparse-only only apply to --mode emit-reps")
    if args.mode == "report" and args.split is not None:
        parser.error("--split is not supported with --mode report; shard a single n")

    try:
        out = open(args.output, "w") if args.output else sys.stdout
    except OSError as exc:
        print(f"ucsgen: cannot open output: {exc}", file=sys.stderr)
        return 1
    try:
        if args.mode == "count":
            row = build_report(args.n, split=args.split)
            out.write(emit_report([row], format=args.format))
        elif args.mode == "report":
            out.write(emit_report(build_reports(args.n), format=args.format))
        else:
            _emit_reps(args, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
