"""Bit-mask subsets of a small universe and permutation actions on them.

A subset A of {1..n} is stored as an n-bit integer with bit i-1 set iff
element i is in A.  Families are kept sorted by a size-first total order:
a set with more elements comes earlier, ties are broken by the numeric
mask value.  All n! permutations of the universe are materialized with a
precomputed action table on all 2^n masks, so applying one is a lookup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_N = 7


def check_universe_size(n: int) -> None:
    """Raise unless 1 <= n <= MAX_N (action tables are n! x 2^n entries)."""
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise ValueError(f"universe size must be an integer in 1..{MAX_N}, got {n!r}")


def encode(elements, n: int) -> int:
    """Encode a collection of elements of {1..n} as a bit mask."""
    check_universe_size(n)
    mask = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e!r} outside universe 1..{n}")
        mask |= 1 << (e - 1)
    return mask


def decode(mask: int) -> tuple[int, ...]:
    """Elements of a mask, ascending."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def order_less(a: int, b: int) -> bool:
    """True iff a precedes b: more elements first, then smaller mask value."""
    ca, cb = a.bit_count(), b.bit_count()
    if ca != cb:
        return ca > cb
    return a < b


def order_key(mask: int) -> tuple[int, int]:
    """Sort key realizing the same order as order_less."""
    return (-mask.bit_count(), mask)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} plus its action on every mask."""

    images: tuple[int, ...]  # images[i-1] is the image of element i, 1-based
    action: tuple[int, ...]  # action[m] is the mask {images[e] : e in m}

    @property
    def is_identity(self) -> bool:
        return all(img == i + 1 for i, img in enumerate(self.images))


def apply_perm(p: Permutation, mask: int) -> int:
    """Image of a mask under a permutation (table lookup)."""
    return p.action[mask]


class UniverseContext:
    """Immutable per-n tables: mask order, ranks, and all n! permutation actions.

    Safe to share between threads once built; every field is read-only in use.
    """

    def __init__(self, n: int):
        check_universe_size(n)
        self.n = n
        self.num_masks = 1 << n
        self.full = self.num_masks - 1
        self.sizes = [m.bit_count() for m in range(self.num_masks)]

        # order[0] is the full universe, the empty set comes last
        self.order = sorted(range(self.num_masks), key=order_key)
        self.rank = [0] * self.num_masks
        for r, m in enumerate(self.order):
            self.rank[m] = r
        # ranks [first_singleton_rank, num_masks - 2] hold the n singletons
        self.first_singleton_rank = self.num_masks - 1 - n

        self.action_table = _build_action_table(n)
        self.perms = [
            Permutation(images=images, action=tuple(row))
            for images, row in zip(
                itertools.permutations(range(1, n + 1)), self.action_table.tolist()
            )
        ]
        self.num_perms = len(self.perms)  # n!
        self.identity_index = 0  # itertools yields the identity first


def _build_action_table(n: int) -> np.ndarray:
    """(n!, 2^n) int32 table: row p maps every mask through permutation p."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for i in range(n):
        has_bit = (masks >> i) & 1
        table |= has_bit[None, :] << perms[:, i : i + 1]
    return table.astype(np.int32)


@lru_cache(maxsize=MAX_N)
def universe(n: int) -> UniverseContext:
    """Shared per-n context (building the n=7 tables takes a moment)."""
    return UniverseContext(n)
