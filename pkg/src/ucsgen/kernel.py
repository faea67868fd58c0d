"""Compiled counting engine for the larger universes.

Same search as generate._Search, restated over flat arrays so numba can
compile it: permutations live in one action table and groups are ranges
of permutation indices inside a shared stack, and string comparisons
touch only the same-size tail of the member list (the deciding group
fixes every larger member, and after sorting, the shared prefix
cancels).

Reduced sets live in a stack as well, one region per recursion frame:
pushing a member writes the surviving minimal sets plus the new one into
fresh space, so backtracking never has to restore anything.  Appending a
singleton extends the current region in place instead, which may leave
stale supersets in the scan; those only cost redundant membership hits.

Three mutually exclusive node modes keep the hot loops small:

  generic   deciding group may shrink; full filter plus segment compare
  singles   only singleton candidates remain; one action lookup per
            permutation decides both canonicity and automorphism count
  trivial   deciding group is the identity alone; every closed extension
            is canonical with a trivial automorphism group

Counts are collected as a histogram over automorphism group sizes so the
labeled total (sum of n!/|Aut|) can be taken exactly in Python ints; the
n=7 total overflows 64-bit arithmetic.
"""

from __future__ import annotations

from math import factorial
from typing import Optional

import numpy as np
from numba import njit

from .generate import SplitSpec, Survey
from .subsets import universe

RED_STACK_CAP = 8192
SEG_CAP = 64  # one same-size slice is at most C(7,3) sets

# No cache=True on the jit functions below: reloading recursive functions
# from numba's on-disk cache produces broken self-call linkage (segfaults
# on the second process).  Compilation costs a few seconds per process.


@njit
def _cmp_segment(action_row, members, seg_start, k, a, buf):
    """Compare the permuted same-size tail (members[seg_start:k] plus a)
    against the original; -1 if the image sorts smaller, 0 if equal, 1 if
    larger.  Within one size the family order is plain numeric order."""
    cnt = 0
    for j in range(seg_start, k):
        v = action_row[members[j]]
        i = cnt
        while i > 0 and buf[i - 1] > v:
            buf[i] = buf[i - 1]
            i -= 1
        buf[i] = v
        cnt += 1
    v = action_row[a]
    i = cnt
    while i > 0 and buf[i - 1] > v:
        buf[i] = buf[i - 1]
        i -= 1
    buf[i] = v
    cnt += 1
    for j in range(cnt - 1):
        orig = members[seg_start + j]
        if buf[j] != orig:
            return -1 if buf[j] < orig else 1
    if buf[cnt - 1] != a:
        return -1 if buf[cnt - 1] < a else 1
    return 0


@njit
def _expand_singles(
    order,
    action,
    membership,
    red,
    gbuf,
    hist,
    acc,
    num_masks,
    nuniv,
    start,
    t_mask,
    red_lo,
    red_len,
    tot,
    k,
    depth,
    g_lo,
    g_hi,
    split_mod,
    split_res,
    split_depth,
):
    nodes = 0
    last = num_masks - 1
    for idx in range(start, last):
        a = order[idx]
        ok = True
        for j in range(red_len):
            if membership[a | red[red_lo + j]] == 0:
                ok = False
                break
        if not ok:
            continue
        t = t_mask | a
        aut = 0
        okc = True
        for gi in range(g_lo, g_hi):
            img = action[gbuf[gi], t]
            if img == t:
                aut += 1
            else:
                diff = img ^ t
                low = diff & -diff
                if img & low:
                    okc = False
                    break
        if not okc:
            continue
        child_depth = depth + 1
        if split_mod > 1 and child_depth == split_depth:
            tick = acc[0]
            acc[0] += 1
            if tick % split_mod != split_res:
                continue
        membership[a] = 1
        red[red_lo + red_len] = a
        if child_depth >= split_depth or split_res == 0:
            nodes += 1
            hist[aut] += 1
            if 2 * (tot + 1) <= nuniv * (k + 1):
                acc[1] += 1
        nodes += _expand_singles(
            order,
            action,
            membership,
            red,
            gbuf,
            hist,
            acc,
            num_masks,
            nuniv,
            idx + 1,
            t,
            red_lo,
            red_len + 1,
            tot + 1,
            k + 1,
            child_depth,
            g_lo,
            g_hi,
            split_mod,
            split_res,
            split_depth,
        )
        membership[a] = 0
    return nodes


@njit
def _expand_trivial(
    order,
    sizes,
    membership,
    red,
    hist,
    acc,
    num_masks,
    nuniv,
    start,
    red_lo,
    red_len,
    tot,
    k,
    depth,
    split_mod,
    split_res,
    split_depth,
):
    nodes = 0
    last = num_masks - 1
    for idx in range(start, last):
        a = order[idx]
        ok = True
        for j in range(red_len):
            if membership[a | red[red_lo + j]] == 0:
                ok = False
                break
        if not ok:
            continue
        child_depth = depth + 1
        if split_mod > 1 and child_depth == split_depth:
            tick = acc[0]
            acc[0] += 1
            if tick % split_mod != split_res:
                continue
        m = sizes[a]
        membership[a] = 1
        if m == 1:
            # later candidates are all singletons; grow the region in place
            red[red_lo + red_len] = a
            child_lo = red_lo
            child_len = red_len + 1
        else:
            child_lo = red_lo + red_len
            w = 0
            for j in range(red_len):
                b = red[red_lo + j]
                if (b | a) != b:
                    red[child_lo + w] = b
                    w += 1
            red[child_lo + w] = a
            child_len = w + 1
        if child_depth >= split_depth or split_res == 0:
            nodes += 1
            hist[1] += 1
            if 2 * (tot + m) <= nuniv * (k + 1):
                acc[1] += 1
        nodes += _expand_trivial(
            order,
            sizes,
            membership,
            red,
            hist,
            acc,
            num_masks,
            nuniv,
            idx + 1,
            child_lo,
            child_len,
            tot + m,
            k + 1,
            child_depth,
            split_mod,
            split_res,
            split_depth,
        )
        membership[a] = 0
    return nodes


@njit
def _expand_generic(
    order,
    sizes,
    action,
    membership,
    members,
    red,
    gbuf,
    buf,
    hist,
    acc,
    num_masks,
    nuniv,
    cursor,
    k,
    red_lo,
    red_len,
    seg_start,
    tot,
    depth,
    inh_lo,
    inh_hi,
    own_lo,
    own_hi,
    gtop,
    split_mod,
    split_res,
    split_depth,
):
    nodes = 0
    smin = sizes[members[k - 1]]
    last = num_masks - 1
    idx = cursor + 1
    while idx < last:
        a = order[idx]
        m = sizes[a]
        if m == 1:
            # hand the singleton tail to the specialised loops; smin >= 2
            # here, so the deciding group is the node's own
            if own_hi - own_lo == 1:
                nodes += _expand_trivial(
                    order,
                    sizes,
                    membership,
                    red,
                    hist,
                    acc,
                    num_masks,
                    nuniv,
                    idx,
                    red_lo,
                    red_len,
                    tot,
                    k,
                    depth,
                    split_mod,
                    split_res,
                    split_depth,
                )
            else:
                nodes += _expand_singles(
                    order,
                    action,
                    membership,
                    red,
                    gbuf,
                    hist,
                    acc,
                    num_masks,
                    nuniv,
                    idx,
                    0,
                    red_lo,
                    red_len,
                    tot,
                    k,
                    depth,
                    own_lo,
                    own_hi,
                    split_mod,
                    split_res,
                    split_depth,
                )
            break
        ok = True
        for j in range(red_len):
            if membership[a | red[red_lo + j]] == 0:
                ok = False
                break
        if not ok:
            idx += 1
            continue
        if m == smin:
            t_lo, t_hi = inh_lo, inh_hi
            cseg = seg_start
        else:
            t_lo, t_hi = own_lo, own_hi
            cseg = k
        if t_hi - t_lo == 1:
            child_depth = depth + 1
            claimed = True
            if split_mod > 1 and child_depth == split_depth:
                tick = acc[0]
                acc[0] += 1
                if tick % split_mod != split_res:
                    claimed = False
            if claimed:
                membership[a] = 1
                child_lo = red_lo + red_len
                w = 0
                for j in range(red_len):
                    b = red[red_lo + j]
                    if (b | a) != b:
                        red[child_lo + w] = b
                        w += 1
                red[child_lo + w] = a
                if child_depth >= split_depth or split_res == 0:
                    nodes += 1
                    hist[1] += 1
                    if 2 * (tot + m) <= nuniv * (k + 1):
                        acc[1] += 1
                nodes += _expand_trivial(
                    order,
                    sizes,
                    membership,
                    red,
                    hist,
                    acc,
                    num_masks,
                    nuniv,
                    idx + 1,
                    child_lo,
                    w + 1,
                    tot + m,
                    k + 1,
                    child_depth,
                    split_mod,
                    split_res,
                    split_depth,
                )
                membership[a] = 0
            idx += 1
            continue
        new_hi = gtop
        okc = True
        for gi in range(t_lo, t_hi):
            p = gbuf[gi]
            c = _cmp_segment(action[p], members, cseg, k, a, buf)
            if c < 0:
                okc = False
                break
            if c == 0:
                gbuf[new_hi] = p
                new_hi += 1
        if not okc:
            idx += 1
            continue
        child_depth = depth + 1
        claimed = True
        if split_mod > 1 and child_depth == split_depth:
            tick = acc[0]
            acc[0] += 1
            if tick % split_mod != split_res:
                claimed = False
        if claimed:
            membership[a] = 1
            members[k] = a
            child_lo = red_lo + red_len
            w = 0
            for j in range(red_len):
                b = red[red_lo + j]
                if (b | a) != b:
                    red[child_lo + w] = b
                    w += 1
            red[child_lo + w] = a
            if child_depth >= split_depth or split_res == 0:
                nodes += 1
                hist[new_hi - gtop] += 1
                if 2 * (tot + m) <= nuniv * (k + 1):
                    acc[1] += 1
            nodes += _expand_generic(
                order,
                sizes,
                action,
                membership,
                members,
                red,
                gbuf,
                buf,
                hist,
                acc,
                num_masks,
                nuniv,
                idx,
                k + 1,
                child_lo,
                w + 1,
                cseg,
                tot + m,
                child_depth,
                t_lo,
                t_hi,
                gtop,
                new_hi,
                new_hi,
                split_mod,
                split_res,
                split_depth,
            )
            membership[a] = 0
        idx += 1
    return nodes


@njit
def _run(
    order,
    sizes,
    action,
    membership,
    members,
    red,
    gbuf,
    buf,
    hist,
    acc,
    num_masks,
    nuniv,
    num_perms,
    split_mod,
    split_res,
    split_depth,
):
    full = num_masks - 1
    membership[0] = 1
    membership[full] = 1
    members[0] = full
    red[0] = full
    for i in range(num_perms):
        gbuf[i] = i
    nodes = 0
    if 0 >= split_depth or split_res == 0:
        nodes += 1
        hist[num_perms] += 1  # the root {universe} is fixed by everything
    nodes += _expand_generic(
        order,
        sizes,
        action,
        membership,
        members,
        red,
        gbuf,
        buf,
        hist,
        acc,
        num_masks,
        nuniv,
        0,
        1,
        0,
        1,
        0,
        nuniv,
        0,
        0,
        num_perms,
        0,
        num_perms,
        num_perms,
        split_mod,
        split_res,
        split_depth,
    )
    return nodes


def count_classes(n: int, split: Optional[SplitSpec] = None) -> Survey:
    """One full (or one shard of a) counting run through the compiled search."""
    ctx = universe(n)
    order = np.array(ctx.order, dtype=np.int32)
    sizes = np.array(ctx.sizes, dtype=np.int32)
    action = ctx.action_table
    membership = np.zeros(ctx.num_masks, dtype=np.uint8)
    members = np.zeros(ctx.num_masks, dtype=np.int32)
    red = np.zeros(RED_STACK_CAP, dtype=np.int32)
    gbuf = np.zeros(ctx.num_masks * ctx.num_perms, dtype=np.int32)
    buf = np.zeros(SEG_CAP, dtype=np.int32)
    hist = np.zeros(ctx.num_perms + 1, dtype=np.int64)
    acc = np.zeros(2, dtype=np.int64)
    if split is None:
        mod, res, depth = 1, 0, -1
    else:
        mod, res, depth = split.modulus, split.residue, split.depth
    nodes = _run(
        order,
        sizes,
        action,
        membership,
        members,
        red,
        gbuf,
        buf,
        hist,
        acc,
        ctx.num_masks,
        n,
        ctx.num_perms,
        mod,
        res,
        depth,
    )
    fact = factorial(n)
    labeled = 0
    histogram: dict[int, int] = {}
    for aut in range(1, ctx.num_perms + 1):
        count = int(hist[aut])
        if count:
            histogram[aut] = count
            labeled += count * (fact // aut)
    return Survey(n, int(nodes), labeled, int(acc[1]), histogram)
