"""Optimal prefix-code lengths (Huffman) and exact weighted-length accounting.

Only codeword lengths are exposed; canonical assignment happens elsewhere.
All weight arithmetic is exact integer, so arbitrarily skewed counts
(e.g. dyadic over 2^16 symbols) are handled without rounding.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .distribution import Distribution
from .errors import KraftViolationError


@dataclass(frozen=True)
class LengthAssignment:
    """Codeword length per coded symbol (dense, positive-count alphabet)."""

    lengths: tuple

    @property
    def max_len(self) -> int:
        return max(self.lengths)

    @property
    def n(self) -> int:
        return len(self.lengths)


def kraft_sum_scaled(lengths: Sequence[int]) -> tuple:
    """Return (sum of 2^(max_len - l), 2^max_len): Kraft sum scaled exactly."""
    m = max(lengths)
    return sum(1 << (m - l) for l in lengths), 1 << m


def check_kraft(lengths: Sequence[int]) -> None:
    num, den = kraft_sum_scaled(lengths)
    if num > den:
        raise KraftViolationError(f"Kraft sum {num}/{den} exceeds 1")


@dataclass
class MergeTree:
    """Huffman merge structure. Leaves are ids 0..k-1 in symbol order;
    internal nodes get increasing ids, so every parent id exceeds its
    children's ids and the root is the last id."""

    left: list
    right: list
    weight: list
    k: int

    @property
    def root(self) -> int:
        return len(self.weight) - 1

    def depths(self) -> list:
        """Depth of every node, root-down (iterative: parents first)."""
        depth = [0] * len(self.weight)
        for node in range(self.root, self.k - 1, -1):
            for ch in (self.left[node], self.right[node]):
                depth[ch] = depth[node] + 1
        return depth


def build_merge_tree(weights: Sequence[int]) -> MergeTree:
    """Deterministic Huffman merging: among equal weights, leaves win over
    merged nodes and smaller ids win over larger (reproducible lengths)."""
    k = len(weights)
    left = [-1] * k
    right = [-1] * k
    weight = list(weights)
    # heap entries: (weight, tie_order); leaves get order = index,
    # merged nodes are ordered after all leaves in creation order
    heap = [(w, i) for i, w in enumerate(weights)]
    heapq.heapify(heap)
    order = k
    while len(heap) > 1:
        wa, ia = heapq.heappop(heap)
        wb, ib = heapq.heappop(heap)
        left.append(ia if ia < ib else ib)
        right.append(ib if ia < ib else ia)
        weight.append(wa + wb)
        node = len(weight) - 1
        heapq.heappush(heap, (wa + wb, order))
        # heap tie order and node ids advance together
        assert order == node
        order += 1
    return MergeTree(left=left, right=right, weight=weight, k=k)


def huffman_lengths(d: Distribution) -> LengthAssignment:
    """Optimal code lengths over the positive-count symbols of d, in
    ascending symbol-index order. A single-symbol alphabet gets length 1."""
    weights = [c for c in d.counts if c > 0]
    if len(weights) == 1:
        return LengthAssignment(lengths=(1,))
    tree = build_merge_tree(weights)
    depth = tree.depths()
    return LengthAssignment(lengths=tuple(depth[: tree.k]))


def weighted_length(lengths: LengthAssignment, d: Distribution) -> int:
    """Exact integer sum of count_i * length_i over positive-count symbols."""
    positive = [c for c in d.counts if c > 0]
    if len(positive) != lengths.n:
        raise ValueError(
            f"length/count size mismatch: {lengths.n} lengths, "
            f"{len(positive)} positive counts"
        )
    return sum(c * l for c, l in zip(positive, lengths.lengths))
