"""Length-limited prefix codes by tree surgery on the optimal code, with a
golden-ratio bound on the extra expected length.

The transformation: build the optimal tree, cut off every subtree rooted
deeper than L, pack the cut leaves into a complete tree T2 of height
h = ceil(log2 r), and re-hang T2 next to a minimum-weight subtree T3 found
at depth L - h - 1, pushing T3 down one level.  The chosen attachment
point must additionally keep every leaf within depth L (an unconstrained
minimum-weight pick can leave a leaf at L + 1); when no node at depth
L - h - 1 qualifies we fall back to shallower attachment points, and as a
last resort clamp the optimal lengths to L and repair the Kraft sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .distribution import Distribution
from .errors import InfeasibleLimitError, ParameterError
from .huffman import (
    LengthAssignment,
    build_merge_tree,
    check_kraft,
    huffman_lengths,
)

PHI = (1 + math.sqrt(5)) / 2


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("ceil_log2 requires n >= 1")
    return (n - 1).bit_length()


@dataclass(frozen=True)
class RestrictionBound:
    """Additive redundancy guarantee 1/phi^exponent for a cap L over n symbols."""

    L: int
    n: int
    exponent: int

    @property
    def value(self) -> float:
        return PHI**-self.exponent


def restriction_bound(L: int, n: int) -> RestrictionBound:
    if L <= ceil_log2(n):
        raise ParameterError(f"L={L} must exceed ceil(log2 {n})={ceil_log2(n)}")
    inner = n + ceil_log2(n) - L
    if inner < 1:
        raise ParameterError(f"n + ceil(log2 n) - L = {inner} < 1")
    exponent = L - ceil_log2(inner) - 1
    if exponent < 0:
        raise ParameterError("negative bound exponent")
    return RestrictionBound(L=L, n=n, exponent=exponent)


def redundancy_bound(L: int, n: int) -> float:
    return restriction_bound(L, n).value


def _clamp_repair(weights, huff_lengths, L: int) -> LengthAssignment:
    """Clamp optimal lengths to L and restore the Kraft inequality.

    Demotes the symbols with the lowest cost-per-freed-space until the code
    fits, then promotes the heaviest symbols back into any space left over.
    """
    import heapq

    k = len(weights)
    lens = [min(l, L) for l in huff_lengths]
    cap = 1 << L
    kraft = sum(1 << (L - l) for l in lens)
    # cost of adding a bit to symbol i is weights[i]; space freed is
    # 2^(L-l-1), so minimize weights[i] * 2^l for the best trade
    heap = [(weights[i] << lens[i], i, lens[i]) for i in range(k) if lens[i] < L]
    heapq.heapify(heap)
    while kraft > cap and heap:
        _, i, l = heapq.heappop(heap)
        if lens[i] != l:
            continue  # stale entry
        lens[i] = l + 1
        kraft -= 1 << (L - l - 1)
        if l + 1 < L:
            heapq.heappush(heap, (weights[i] << (l + 1), i, l + 1))
    assert kraft <= cap, "length repair failed to satisfy Kraft"
    # promote heavy symbols while spare space remains
    for i in sorted(range(k), key=lambda i: -weights[i]):
        while lens[i] > 1 and kraft + (1 << (L - lens[i])) <= cap:
            kraft += 1 << (L - lens[i])
            lens[i] -= 1
    return LengthAssignment(lengths=tuple(lens))


def restrict(d: Distribution, L: int) -> LengthAssignment:
    """Code lengths with max <= L, within the phi-bound of Huffman's weighted
    length.  Returns the Huffman lengths unchanged when they already fit."""
    weights = [c for c in d.counts if c > 0]
    k = len(weights)
    if k == 1:
        if L < 1:
            raise InfeasibleLimitError("L must be >= 1")
        return LengthAssignment(lengths=(1,))
    if L <= ceil_log2(k):
        raise InfeasibleLimitError(
            f"infeasible length limit L={L} for {k} symbols"
        )
    huff = huffman_lengths(d)
    if huff.max_len <= L:
        return huff

    tree = build_merge_tree(weights)
    size = len(tree.weight)
    depth = tree.depths()
    removed = [i for i in range(k) if depth[i] > L]

    # Bottom-up over node ids (children precede parents): survival, remaining
    # weight, pruned height, and presence (a contracted single-child internal
    # node is pass-through, not a node of the pruned tree).
    alive = [False] * size
    rem_w = [0] * size
    pheight = [0] * size
    present = [False] * size
    removed_set = set(removed)
    for node in range(size):
        if node < k:
            alive[node] = node not in removed_set
            rem_w[node] = weights[node] if alive[node] else 0
            present[node] = alive[node]
            continue
        ch = [c for c in (tree.left[node], tree.right[node]) if alive[c]]
        if not ch:
            continue
        alive[node] = True
        rem_w[node] = sum(rem_w[c] for c in ch)
        if len(ch) == 2:
            present[node] = True
            pheight[node] = 1 + max(pheight[c] for c in ch)
        else:
            pheight[node] = pheight[ch[0]]

    # Top-down pruned depths for alive nodes.
    pdepth = [0] * size
    for node in range(tree.root, k - 1, -1):
        if not alive[node]:
            continue
        step = 1 if present[node] else 0
        for c in (tree.left[node], tree.right[node]):
            if alive[c]:
                pdepth[c] = pdepth[node] + step

    r = len(removed)
    h = ceil_log2(r) if r > 1 else 0
    q = L - h - 1
    assert q >= 0

    def pick(cands):
        return min(cands, key=lambda v: (rem_w[v], -pdepth[v], v), default=None)

    # T3 moves one level down, so its pruned height must stay within h to
    # respect the cap; same-depth candidates first, then any shallower node.
    v = pick(
        v for v in range(size)
        if present[v] and pdepth[v] == q and pheight[v] <= h
    )
    if v is None:
        v = pick(
            v for v in range(size)
            if present[v] and pdepth[v] <= q and pheight[v] <= L - pdepth[v] - 1
        )
    if v is None:
        # No attachment point keeps the cap (possible when most leaves sit
        # beyond L): clamp the optimal lengths and repair the Kraft sum.
        return _clamp_repair(weights, huff.lengths, L)

    in_v = [False] * size
    in_v[v] = True
    for node in range(tree.root, k - 1, -1):
        if alive[node] and in_v[node]:
            for c in (tree.left[node], tree.right[node]):
                if alive[c]:
                    in_v[c] = True

    new_len = [0] * k
    for i in range(k):
        if alive[i]:
            new_len[i] = pdepth[i] + (1 if in_v[i] else 0)

    # Complete tree T2 over the r removed leaves: (2^h - r) slots at depth
    # h-1, the rest at depth h; heavier leaves take the shallower slots.
    base = pdepth[v] + 1
    shallow = (1 << h) - r
    by_weight = sorted(removed, key=lambda i: (-weights[i], i))
    for rank, i in enumerate(by_weight):
        new_len[i] = base + (h - 1 if rank < shallow else h)

    assert max(new_len) <= L, "length cap violated"
    check_kraft(new_len)
    return LengthAssignment(lengths=tuple(new_len))
