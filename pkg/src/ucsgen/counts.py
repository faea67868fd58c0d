"""Derived tallies: Moore families via complementation, and report tables.

Complementing every member inside the universe turns a union-closed
family containing the universe and the empty set into an
intersection-closed family containing the universe (a Moore family), and
the map is a bijection that respects relabeling.  Moore families on n
elements whose intersection of all members has i elements correspond to
union-closed families on those i elements, so the Moore totals are sums
over smaller universes; the labeled sum weighs universe choices by
binomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .family import Family
from .generate import SplitSpec, Survey, survey
from .subsets import check_universe_size

TSV_HEADER = "n\tucs_classes\tucs_labeled\tmoore_classes\tmoore_labeled\tsparse_classes"


@dataclass(frozen=True)
class CountsReport:
    n: int
    ucs_classes: int
    ucs_labeled: int
    moore_classes: int
    moore_labeled: int
    sparse_classes: int


def moore_from_ucs(
    ucs_classes: Sequence[int], ucs_labeled: Sequence[int]
) -> tuple[int, int]:
    """Moore-family totals on n elements from union-closed totals on 0..n.

    Index i holds the count for an i-element universe; index 0 must be 1
    (the lone family {empty set} on the empty universe).
    """
    if len(ucs_classes) != len(ucs_labeled):
        raise ValueError("class and labeled arrays must cover the same range")
    if not ucs_classes or ucs_classes[0] != 1 or ucs_labeled[0] != 1:
        raise ValueError("index 0 must hold the single empty-universe family")
    n = len(ucs_classes) - 1
    moore_classes = sum(ucs_classes)
    moore_labeled = sum(comb(n, i) * ucs_labeled[i] for i in range(n + 1))
    return moore_classes, moore_labeled


def complement_family(f: Family) -> set[int]:
    """Member-wise complement in the universe; an intersection-closed set
    of masks containing the universe mask."""
    out = {f.full ^ m for m in f.members}
    out.add(f.full)  # complement of the empty set
    return out


def sparse_count(n: int, engine: str = "auto") -> int:
    """Classes whose average non-empty member size is at most n/2."""
    return survey(n, engine=engine).sparse_classes


def _report_from_surveys(n: int, surveys: Sequence[Survey]) -> CountsReport:
    classes = [1] + [sv.classes for sv in surveys]
    labeled = [1] + [sv.labeled for sv in surveys]
    mc, ml = moore_from_ucs(classes, labeled)
    top = surveys[-1]
    return CountsReport(n, top.classes, top.labeled, mc, ml, top.sparse_classes)


def build_reports(n: int, engine: str = "auto") -> list[CountsReport]:
    """Full-table rows for universes 1..n, enumerating each level once."""
    check_universe_size(n)
    surveys = [survey(i, engine=engine) for i in range(1, n + 1)]
    return [_report_from_surveys(i, surveys[:i]) for i in range(1, n + 1)]


def build_report(
    n: int, split: Optional[SplitSpec] = None, engine: str = "auto"
) -> CountsReport:
    """One report row; with a split, the row covers one shard.

    Shard rows add up: the ucs and sparse columns are the shard's own
    totals, and the Moore columns carry the smaller-universe and
    empty-universe contributions only in residue 0, so summing any column
    over all residues reproduces the unsplit value.
    """
    check_universe_size(n)
    sv = survey(n, split=split, engine=engine)
    if split is None or split.residue == 0:
        lower = [survey(i, engine=engine) for i in range(1, n)]
        classes = [1] + [s.classes for s in lower] + [sv.classes]
        labeled = [1] + [s.labeled for s in lower] + [sv.labeled]
        mc, ml = moore_from_ucs(classes, labeled)
    else:
        mc, ml = sv.classes, sv.labeled
    return CountsReport(n, sv.classes, sv.labeled, mc, ml, sv.sparse_classes)


def emit_report(reports: Sequence[CountsReport], format: str = "tsv") -> str:
    """Render rows as a table; exact decimal integers either way."""
    rows = [
        (
            str(r.n),
            str(r.ucs_classes),
            str(r.ucs_labeled),
            str(r.moore_classes),
            str(r.moore_labeled),
            str(r.sparse_classes),
        )
        for r in reports
    ]
    header = TSV_HEADER.split("\t")
    if format == "tsv":
        lines = ["\t".join(header)] + ["\t".join(row) for row in rows]
        return "\n".join(lines) + "\n"
    if format == "text-table":
        widths = [
            max(len(header[c]), *(len(row[c]) for row in rows)) if rows else len(header[c])
            for c in range(len(header))
        ]
        def fmt(row):
            return "  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row))
        return "\n".join([fmt(header)] + [fmt(row) for row in rows]) + "\n"
    raise ValueError(f"unknown format: {format!r}")
