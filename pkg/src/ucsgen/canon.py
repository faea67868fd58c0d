"""Canonical representatives of family isomorphism classes.

A family is written as the string of its non-empty member masks in
ascending family order; the class representative is the relabeling with
the lexicographically smallest string.  Canonicity of a freshly extended
family only needs to be checked against the permutations that fix the
already-frozen larger members setwise, which is why the search threads a
shrinking permutation group through the recursion instead of trying all
n! relabelings every time.
"""

from __future__ import annotations

from .family import Family
from .subsets import Permutation, order_key, order_less, universe

SMALLER, EQUAL, LARGER = -1, 0, 1


def family_string(f: Family) -> tuple[int, ...]:
    """The member-mask string identifying f (empty set omitted)."""
    return tuple(f.members)


def compare_image(p: Permutation, f: Family) -> int:
    """Compare the member string of p(f) against f's own, position by position."""
    members = f.members
    image = sorted((p.action[m] for m in members), key=order_key)
    for x, y in zip(image, members):
        if x != y:
            return SMALLER if order_less(x, y) else LARGER
    return EQUAL


def canonical_step(
    f: Family, parent_group: list[Permutation]
) -> tuple[bool, list[Permutation]]:
    """Decide canonicity of f against parent_group and filter the group.

    parent_group must contain every permutation that could map f to a
    smaller string (it does whenever it is the stabilizer of the members
    larger than f's newest one).  Returns (False, []) on the first
    permutation producing a smaller string; otherwise (True, aut) where
    aut is exactly the subgroup fixing f, the automorphism group used for
    all deeper extensions.
    """
    if len(parent_group) == 1:
        # only the identity survives this deep; nothing can beat the string
        return True, parent_group
    aut = []
    for p in parent_group:
        c = compare_image(p, f)
        if c == SMALLER:
            return False, []
        if c == EQUAL:
            aut.append(p)
    return True, aut


def is_canonical_naive(f: Family) -> bool:
    """Canonicity by trying all n! permutations; the slow reference answer."""
    ctx = universe(f.n)
    return all(compare_image(p, f) != SMALLER for p in ctx.perms)


def stabilizer_chain(f: Family) -> dict[int, list[Permutation]]:
    """Setwise stabilizers of the size->=m member slices, for m in 1..n+1.

    Built naively by filtering all n! permutations per level; meant for
    cross-checks, not for the search itself.  Level n+1 stabilizes the
    empty slice, so it is the full symmetric group.
    """
    ctx = universe(f.n)
    chain: dict[int, list[Permutation]] = {}
    for m in range(1, f.n + 2):
        slice_m = frozenset(a for a in f.members if a.bit_count() >= m)
        chain[m] = [
            p
            for p in ctx.perms
            if frozenset(p.action[a] for a in slice_m) == slice_m
        ]
    return chain
