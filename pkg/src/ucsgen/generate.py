"""Depth-first generation of one representative per family isomorphism class.

The search grows families member by member, always appending a set that
comes after everything already present in the family order (larger sets
first).  A child is kept only when it is the canonical representative of
its class, so no isomorph rejection pass is needed afterwards: the
canonical families form a tree rooted at {universe}, because deleting the
last member of a canonical family leaves a canonical family.

Two permutation groups ride along with every node.  The inherited group
stabilizes the members strictly larger than the node's smallest member
and is what a same-size sibling extension must be checked against; the
node's own automorphism group (a filtered subset of the inherited one)
suffices once extensions drop to a strictly smaller size.  Using the own
group for same-size extensions would miss relabelings and is the classic
way to get the automorphism counts wrong.

Once only singletons remain as candidates the groups stop shrinking and
a family extends canonically exactly when its singleton support, read as
a single mask, cannot be mapped to a smaller mask; that phase avoids all
string comparisons.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Callable, Optional

from .canon import canonical_step
from .family import Family, base_family, can_extend, sparseness
from .subsets import Permutation, universe

Visitor = Callable[[Family, int], None]


@dataclass(frozen=True)
class SplitSpec:
    """Deterministic work-sharding directive.

    Canonical nodes at exactly `depth` members below the root are dealt
    round-robin to residues modulo `modulus`; a node's subtree goes with
    the node.  The shallow nodes above the split depth belong to residue
    0, so summing per-residue results over 0..modulus-1 reproduces an
    unsplit run exactly, and every shard is reproducible in isolation.
    """

    modulus: int
    residue: int
    depth: int = 2

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("split modulus must be >= 1")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("split residue must lie in [0, modulus)")
        if self.depth < 1:
            raise ValueError("split depth must be >= 1")


@dataclass(frozen=True)
class Survey:
    """Totals from one enumeration pass (one shard, if split)."""

    n: int
    classes: int
    labeled: int
    sparse_classes: int
    aut_histogram: dict[int, int]


class _Search:
    def __init__(
        self,
        ctx,
        visitor: Optional[Visitor],
        split: Optional[SplitSpec],
        singleton_phase: bool,
    ) -> None:
        self.ctx = ctx
        self.visitor = visitor
        self.singleton_phase = singleton_phase
        if split is None:
            self.modulus, self.residue, self.split_depth = 1, 0, -1
        else:
            self.modulus, self.residue, self.split_depth = (
                split.modulus,
                split.residue,
                split.depth,
            )
        self.fam = base_family(ctx.n)
        self.nodes = 0
        self.counter = 0

    def run(self) -> int:
        group = list(self.ctx.perms)  # every permutation fixes {universe}
        self._visit(0, len(group))
        self._expand(0, group, group, 0)
        return self.nodes

    def _visit(self, depth: int, aut_size: int) -> None:
        if depth >= self.split_depth or self.residue == 0:
            self.nodes += 1
            if self.visitor is not None:
                self.visitor(self.fam, aut_size)

    def _claims_child(self, child_depth: int) -> bool:
        # tick once per canonical child crossing the split depth, in a
        # fixed order, so shards partition the tree deterministically
        if self.modulus > 1 and child_depth == self.split_depth:
            tick = self.counter
            self.counter += 1
            return tick % self.modulus == self.residue
        return True

    def _expand(
        self,
        cursor: int,
        inherited: list[Permutation],
        own: list[Permutation],
        depth: int,
    ) -> None:
        ctx = self.ctx
        fam = self.fam
        order, sizes = ctx.order, ctx.sizes
        smin = sizes[fam.members[-1]]
        last = ctx.num_masks - 1  # the empty set closes the order; never a member
        idx = cursor + 1
        while idx < last:
            a = order[idx]
            m = sizes[a]
            if m == 1 and self.singleton_phase:
                group = inherited if smin == 1 else own
                self._expand_singletons(idx, group, depth, 0)
                return
            if can_extend(fam, a):
                group = inherited if m == smin else own
                removed = fam.push(a)
                ok, child_own = canonical_step(fam, group)
                if ok and self._claims_child(depth + 1):
                    self._visit(depth + 1, len(child_own))
                    self._expand(idx, group, child_own, depth + 1)
                fam.pop(removed)
            idx += 1

    def _expand_singletons(
        self, start: int, group: list[Permutation], depth: int, present: int
    ) -> None:
        """Tail of the search where every remaining candidate is a singleton.

        present is the union mask of singleton members already in the
        family.  Adding singleton a keeps the family canonical iff no
        permutation in group maps present|a to a mask with a spare low
        bit, and the permutations fixing present|a are exactly the
        automorphisms; the group is reused as-is all the way down.
        """
        ctx = self.ctx
        fam = self.fam
        order = ctx.order
        last = ctx.num_masks - 1
        for idx in range(start, last):
            a = order[idx]
            if not can_extend(fam, a):
                continue
            t = present | a
            aut = 0
            ok = True
            for p in group:
                img = p.action[t]
                if img == t:
                    aut += 1
                    continue
                diff = img ^ t
                low = diff & -diff
                if img & low:
                    # the image owns the lowest differing element, so its
                    # singleton string precedes ours
                    ok = False
                    break
            if not ok:
                continue
            if self._claims_child(depth + 1):
                removed = fam.push(a, skip_reduce=True)
                self._visit(depth + 1, aut)
                self._expand_singletons(idx + 1, group, depth + 1, t)
                fam.pop(removed)


def enumerate_families(
    n: int,
    visitor: Optional[Visitor] = None,
    split: Optional[SplitSpec] = None,
    *,
    singleton_phase: bool = True,
) -> int:
    """Visit every canonical union-closed family on n elements once.

    The visitor receives the live Family (do not hold on to it; copy if
    needed) and its automorphism count.  Returns the number of families
    visited, i.e. the number of isomorphism classes when no split is in
    force.  Disabling singleton_phase forces the generic group-filtering
    path everywhere; results must not change.
    """
    ctx = universe(n)
    run = _Search(ctx, visitor, split, singleton_phase)
    return run.run()


def enumerate_singleton_phase(
    f: Family, group: list[Permutation], visitor: Optional[Visitor] = None
) -> int:
    """Run just the singleton tail below f, given f's deciding group.

    Every candidate after f's last member must already be a singleton.
    Visits the proper descendants of f (not f itself) and returns how
    many there were.
    """
    ctx = universe(f.n)
    cursor = ctx.rank[f.members[-1]]
    if cursor + 1 < ctx.first_singleton_rank:
        raise ValueError("family still has non-singleton candidates")
    run = _Search(ctx, visitor, None, True)
    run.fam = f.copy()
    present = 0
    for m in f.members:
        if ctx.sizes[m] == 1:
            present |= m
    run._expand_singletons(cursor + 1, group, len(f.members) - 1, present)
    return run.nodes


def survey(
    n: int, split: Optional[SplitSpec] = None, engine: str = "auto"
) -> Survey:
    """Count classes, labeled families and sparse classes in one pass.

    engine "reference" is the pure-Python search above, "kernel" the
    compiled one; "auto" picks the kernel for n >= 5 where compilation
    pays for itself.
    """
    if engine == "auto":
        engine = "reference" if n <= 4 else "kernel"
    if engine == "kernel":
        from .kernel import count_classes

        return count_classes(n, split)
    if engine != "reference":
        raise ValueError(f"unknown engine: {engine!r}")

    hist: Counter[int] = Counter()
    sparse = 0

    def tally(f: Family, aut_size: int) -> None:
        nonlocal sparse
        hist[aut_size] += 1
        if sparseness(f).is_sparse:
            sparse += 1

    classes = enumerate_families(n, tally, split)
    fact = factorial(n)
    labeled = sum(count * (fact // aut) for aut, count in hist.items())
    return Survey(n, classes, labeled, sparse, dict(hist))


def count_with_automorphisms(
    n: int, split: Optional[SplitSpec] = None, engine: str = "auto"
) -> tuple[int, int]:
    """(isomorphism classes, labeled families) on an n-element universe."""
    sv = survey(n, split, engine)
    return sv.classes, sv.labeled
