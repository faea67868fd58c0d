"""Union-closed families of subsets with an incrementally maintained reduced set.

A family always contains the full universe and the empty set.  Non-empty
members are kept ascending in the size-first order, so the member appended
last is always the one with fewest elements (largest in the order).  Closure
of an extension is decided against the reduced set only: a union with any
member factors through a minimal member below it, so checking the minimal
members suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .subsets import check_universe_size, order_key, order_less


class Family:
    """Mutable union-closed family on {1..n}.

    members:    non-empty member masks, ascending in family order, universe first
    membership: flag per mask (the empty set's flag is always on)
    reduced:    the minimal non-empty members, as a list in no particular order;
                during singleton additions it may keep stale supersets, which
                only adds redundant (always satisfied) closure checks
    """

    __slots__ = ("n", "full", "members", "membership", "reduced")

    def __init__(self, n: int, members, membership, reduced):
        self.n = n
        self.full = (1 << n) - 1
        self.members = members
        self.membership = membership
        self.reduced = reduced

    def __contains__(self, mask: int) -> bool:
        return bool(self.membership[mask])

    def __repr__(self):
        return f"Family(n={self.n}, members={self.members})"

    def copy(self) -> "Family":
        return Family(
            self.n, list(self.members), bytearray(self.membership), list(self.reduced)
        )

    # -- in-place extension with undo, for backtracking enumeration ----------

    def push(self, a: int, skip_reduce: bool = False) -> list[int]:
        """Append member a; returns the reduced-set entries displaced by it.

        With skip_reduce the superset scan is skipped and a is appended to
        the reduced list as-is (used when a is a singleton and no smaller
        sets can ever arrive).
        """
        self.members.append(a)
        self.membership[a] = 1
        removed: list[int] = []
        if not skip_reduce:
            kept = []
            for b in self.reduced:
                if (b | a) == b:  # a is a subset of b, so b stops being minimal
                    removed.append(b)
                else:
                    kept.append(b)
            self.reduced = kept
        self.reduced.append(a)
        return removed

    def pop(self, removed: list[int]) -> None:
        """Undo the matching push exactly (reduced is restored as a set).

        Pops deeper in the tree may have shuffled the reduced list, so a
        is removed by value, not by position.
        """
        a = self.members.pop()
        self.membership[a] = 0
        self.reduced.remove(a)
        self.reduced.extend(removed)


@dataclass(frozen=True)
class SparsenessReport:
    total_element_count: int
    nonempty_set_count: int
    is_sparse: bool


def base_family(n: int) -> Family:
    """The two-member family {universe, empty set}, the root of every run."""
    check_universe_size(n)
    full = (1 << n) - 1
    membership = bytearray(1 << n)
    membership[0] = 1
    membership[full] = 1
    return Family(n, [full], membership, [full])


def can_extend(f: Family, a: int) -> bool:
    """Is f plus a still union-closed?  Checks unions with reduced members only."""
    assert a != 0 and a != f.full, "candidate must be a non-empty proper subset"
    assert order_less(f.members[-1], a), "candidate must come after every member"
    membership = f.membership
    for b in f.reduced:
        if not membership[a | b]:
            return False
    return True


def extend(f: Family, a: int) -> Family:
    """New family with a appended (a must satisfy can_extend)."""
    g = f.copy()
    g.push(a)
    return g


def brute_force_closed(masks) -> bool:
    """Pairwise-union check over an arbitrary collection of masks."""
    ms = list(masks)
    present = set(ms)
    for i, x in enumerate(ms):
        for y in ms[i + 1 :]:
            if (x | y) not in present:
                return False
    return True


def minimal_members(masks) -> list[int]:
    """Non-empty masks with no non-empty proper subset in the collection."""
    ms = [m for m in masks if m]
    out = [
        a
        for a in ms
        if not any(b != a and (a | b) == a for b in ms)
    ]
    out.sort(key=order_key)
    return out


def sparseness(f: Family) -> SparsenessReport:
    """Average member size at most n/2, decided in exact integer arithmetic."""
    total = sum(m.bit_count() for m in f.members)
    k = len(f.members)
    return SparsenessReport(total, k, 2 * total <= f.n * k)


def serialize_family(f: Family) -> str:
    """One-line form: comma-separated lowercase-hex masks, universe first."""
    return ",".join(format(m, "x") for m in f.members)
