"""Pure-Python enumeration engine: counts, visit order, groups, sharding."""

import random
from functools import lru_cache

import pytest

from ucsgen.canon import canonical_step, is_canonical_naive
from ucsgen.family import (
    base_family,
    can_extend,
    minimal_members,
    serialize_family,
)
from ucsgen.generate import (
    SplitSpec,
    count_with_automorphisms,
    enumerate_families,
    enumerate_singleton_phase,
    survey,
)
from ucsgen.subsets import universe

from oracles import all_union_closed, orbits

CLASSES = {1: 1, 2: 3, 3: 14, 4: 165, 5: 14480}
LABELED = {1: 1, 2: 4, 3: 45, 4: 2271, 5: 1373701}
SPARSE = {1: 0, 2: 0, 3: 0, 4: 2, 5: 27}


def record_run(n, split=None, singleton_phase=True):
    seen = []
    enumerate_families(
        n,
        lambda f, aut: seen.append((serialize_family(f), aut)),
        split,
        singleton_phase=singleton_phase,
    )
    return seen


@lru_cache(maxsize=None)
def whole_run(n):
    """Cached unsplit visit list; the split suites reuse it heavily."""
    return tuple(record_run(n))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_class_counts_match_oracle(n):
    assert enumerate_families(n) == len(orbits(all_union_closed(n), n))
    assert enumerate_families(n) == CLASSES[n]


def test_root_visited_first_with_full_group():
    seen = record_run(3)
    assert seen[0] == ("7", 6)
    assert len(seen) == 14


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_singleton_phase_is_an_optimization_only(n):
    assert record_run(n, singleton_phase=True) == record_run(
        n, singleton_phase=False
    )


def test_visited_families_are_closed_and_distinct():
    n = 4
    run = record_run(n)
    seen = {fam for fam, _ in run}
    assert len(run) == CLASSES[n]
    assert len(seen) == len(run)  # no class visited twice
    labeled = set()
    for masks in all_union_closed(n):
        labeled.add(
            ",".join(
                format(m, "x")
                for m in sorted(masks, key=lambda m: (-bin(m).count("1"), m))
            )
        )
    assert seen <= labeled  # every visit is a genuine union-closed family


def test_enumerate_singleton_phase_from_root():
    # from {universe} on two elements the singleton tail adds {3,1} and {3,1,2}
    f = base_family(2)
    ctx = universe(2)
    seen = []
    count = enumerate_singleton_phase(
        f, list(ctx.perms), lambda g, aut: seen.append((serialize_family(g), aut))
    )
    assert count == 2
    assert seen == [("3,1", 1), ("3,1,2", 2)]


def test_enumerate_singleton_phase_mid_family():
    ctx = universe(2)
    f = base_family(2)
    f.push(1)
    ident = [p for p in ctx.perms if p.is_identity]
    seen = []
    count = enumerate_singleton_phase(
        f, ident, lambda g, aut: seen.append(serialize_family(g))
    )
    assert count == 1
    assert seen == ["3,1,2"]
    # the input family is untouched
    assert f.members == [3, 1]


def test_enumerate_singleton_phase_rejects_early_families():
    with pytest.raises(ValueError):
        enumerate_singleton_phase(base_family(3), list(universe(3).perms))


def test_groups_shrink_along_paths():
    """Walk the n=4 tree by hand with the public pieces and check that the
    deciding groups only ever lose permutations as the path deepens."""
    n = 4
    ctx = universe(n)
    paths = 0

    def walk(f, cursor, inherited, own, depth):
        nonlocal paths
        smin = ctx.sizes[f.members[-1]]
        for idx in range(cursor + 1, ctx.num_masks - 1):
            a = ctx.order[idx]
            if not can_extend(f, a):
                continue
            group = inherited if ctx.sizes[a] == smin else own
            removed = f.push(a)
            ok, child_own = canonical_step(f, group)
            if ok:
                assert set(id(p) for p in child_own) <= set(id(p) for p in group)
                assert len(child_own) <= len(group) and len(child_own) >= 1
                walk(f, idx, group, child_own, depth + 1)
                paths += 1
            f.pop(removed)

    start = list(ctx.perms)
    walk(base_family(n), 0, start, start, 0)
    assert paths == CLASSES[n] - 1  # every canonical family except the root


@pytest.mark.parametrize("modulus", [2, 3, 5])
@pytest.mark.parametrize("depth", [1, 2])
def test_split_partitions_the_tree(modulus, depth):
    n = 5
    whole = list(whole_run(n))
    shards = [
        record_run(n, SplitSpec(modulus, r, depth)) for r in range(modulus)
    ]
    merged = [fam for shard in shards for fam in shard]
    assert sorted(merged) == sorted(whole)
    # residue 0 carries the shallow prefix of the tree
    assert shards[0][0] == whole[0]


def test_split_survey_sums_to_unsplit():
    n = 5
    total = survey(n, engine="reference")
    assert (total.classes, total.labeled, total.sparse_classes) == (
        CLASSES[n],
        LABELED[n],
        SPARSE[n],
    )
    for modulus, depth in [(3, 1), (4, 2)]:
        parts = [
            survey(n, SplitSpec(modulus, r, depth), engine="reference")
            for r in range(modulus)
        ]
        assert sum(p.classes for p in parts) == total.classes
        assert sum(p.labeled for p in parts) == total.labeled
        assert sum(p.sparse_classes for p in parts) == total.sparse_classes


def test_split_spec_validation():
    with pytest.raises(ValueError):
        SplitSpec(0, 0)
    with pytest.raises(ValueError):
        SplitSpec(3, 3)
    with pytest.raises(ValueError):
        SplitSpec(3, -1)
    with pytest.raises(ValueError):
        SplitSpec(3, 1, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_survey_reference_engine(n):
    sv = survey(n, engine="reference")
    assert sv.classes == CLASSES[n]
    assert sv.labeled == LABELED[n]
    assert sv.sparse_classes == SPARSE[n]
    assert sum(sv.aut_histogram.values()) == sv.classes


def test_count_with_automorphisms():
    assert count_with_automorphisms(2) == (3, 4)
    assert count_with_automorphisms(5, engine="reference") == (14480, 1373701)


def test_survey_rejects_unknown_engine():
    with pytest.raises(ValueError):
        survey(3, engine="magic")


def test_reduced_set_matches_recomputation_along_random_paths():
    """Drive fams down random branches of the n=5 tree and verify the
    incrementally kept reduced set against a from-scratch recomputation at
    every node, including after pops."""
    n = 5
    ctx = universe(n)
    rng = random.Random(20817)
    for _ in range(60):
        f = base_family(n)
        trail = []
        for _step in range(12):
            cursor = ctx.rank[f.members[-1]]
            options = [
                ctx.order[i]
                for i in range(cursor + 1, ctx.num_masks - 1)
                if can_extend(f, ctx.order[i])
            ]
            if not options:
                break
            if trail and rng.random() < 0.3:
                f.pop(trail.pop())
                continue
            a = rng.choice(options)
            trail.append(f.push(a))
            assert sorted(f.reduced) == sorted(minimal_members(f.members))
            assert all(f.membership[x | y] for x in f.reduced for y in f.reduced)
        while trail:
            f.pop(trail.pop())
            assert sorted(f.reduced) == sorted(minimal_members(f.members))
        assert f.members == [f.full]


def test_determinism_two_runs_identical():
    assert record_run(4) == record_run(4)
    a = record_run(5, SplitSpec(3, 1, 2))
    b = record_run(5, SplitSpec(3, 1, 2))
    assert a == b
