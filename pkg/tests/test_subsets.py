from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from ucsgen.subsets import (
    MAX_N,
    apply_perm,
    check_universe_size,
    decode,
    encode,
    order_key,
    order_less,
    popcount,
    universe,
)

from oracles import perm_image


def test_encode_examples():
    assert encode({1, 3}, 3) == 5
    assert encode(set(), 4) == 0
    assert encode({1, 2, 3}, 3) == 7


def test_encode_rejects_out_of_range():
    with pytest.raises(ValueError):
        encode({0}, 3)
    with pytest.raises(ValueError):
        encode({4}, 3)


@given(st.integers(min_value=1, max_value=MAX_N), st.data())
def test_encode_decode_roundtrip(n, data):
    mask = data.draw(st.integers(min_value=0, max_value=(1 << n) - 1))
    assert encode(decode(mask), n) == mask
    assert popcount(mask) == len(decode(mask))


def test_order_less_examples():
    assert order_less(7, 3)  # more elements sorts first
    assert order_less(1, 2)  # same size, numeric tie-break
    assert not order_less(3, 3)


def test_order_is_strict_total_order_n5():
    masks = range(32)
    for a in masks:
        for b in masks:
            if a == b:
                assert not order_less(a, b)
            else:
                assert order_less(a, b) != order_less(b, a)
    # transitivity via the sort key: order_less must agree with order_key
    for a in masks:
        for b in masks:
            assert order_less(a, b) == (order_key(a) < order_key(b))


def test_universe_order_table():
    ctx = universe(4)
    assert ctx.order[0] == 15
    assert ctx.order[-1] == 0
    for i in range(len(ctx.order) - 1):
        assert order_less(ctx.order[i], ctx.order[i + 1])
    for rank, mask in enumerate(ctx.order):
        assert ctx.rank[mask] == rank
    # singleton block sits just before the empty set
    assert ctx.order[ctx.first_singleton_rank] == 1
    singles = ctx.order[ctx.first_singleton_rank : -1]
    assert [popcount(m) for m in singles] == [1] * 4


def test_universe_size_checks():
    for bad in (0, 8, -1):
        with pytest.raises(ValueError):
            check_universe_size(bad)
    assert universe(3) is universe(3)  # cached context


def test_apply_perm_examples():
    ctx = universe(3)
    ident = ctx.perms[ctx.identity_index]
    assert ident.is_identity
    for m in range(8):
        assert apply_perm(ident, m) == m
    swap = next(p for p in universe(2).perms if p.images == (2, 1))
    assert apply_perm(swap, 0b01) == 0b10
    cycle = next(p for p in ctx.perms if p.images == (2, 3, 1))
    assert apply_perm(cycle, 0b011) == 0b110


def test_action_table_matches_elementwise_relabeling():
    ctx = universe(4)
    for p in ctx.perms:
        assert p.action[0] == 0
        assert p.action[15] == 15
        for m in range(16):
            img = apply_perm(p, m)
            assert img == perm_image(p.images, m)
            assert popcount(img) == popcount(m)


def test_action_composition():
    ctx = universe(3)
    for p in ctx.perms:
        for q in ctx.perms:
            comp = tuple(p.images[q.images[i] - 1] for i in range(3))
            pq = next(r for r in ctx.perms if r.images == comp)
            for m in range(8):
                assert apply_perm(pq, m) == apply_perm(p, apply_perm(q, m))


def test_all_permutations_present():
    ctx = universe(4)
    assert ctx.num_perms == 24
    assert {p.images for p in ctx.perms} == set(permutations((1, 2, 3, 4)))
