"""Independent brute-force oracles used only by the test suite."""
from __future__ import annotations

from fractions import Fraction

import numpy as np


# ------------------------------------------------------------- sequences


class NaiveSequence:
    """Precomputed scan answers for access/rank/select (1-based)."""

    def __init__(self, S, sigma):
        self.S = list(S)
        self.sigma = sigma
        arr = np.asarray(self.S, dtype=np.int64)
        self._occ = {
            c: np.flatnonzero(arr == c) for c in range(1, sigma + 1)
        }
        self._rank = {
            c: np.cumsum(arr == c) for c in range(1, sigma + 1)
        }

    def access(self, i):
        return self.S[i - 1]

    def rank(self, c, i):
        if i == 0:
            return 0
        return int(self._rank[c][i - 1])

    def select(self, c, j):
        return int(self._occ[c][j - 1]) + 1

    def count(self, c):
        return len(self._occ[c])


# ----------------------------------------------------- optimal code search


def exhaustive_optimal_weighted(counts) -> int:
    """Minimum sum(count_i * len_i) over all Kraft-feasible length vectors,
    by direct search (n <= ~12)."""
    weights = sorted((c for c in counts if c > 0), reverse=True)
    n = len(weights)
    if n == 1:
        return weights[0]
    cap = n - 1  # an optimal code never needs longer codewords
    best = [sum(w * cap for w in weights)]

    def dfs(idx, prev_len, kraft_left: Fraction, acc):
        if acc >= best[0]:
            return
        if idx == n:
            best[0] = acc
            return
        remaining = n - idx
        for l in range(prev_len, cap + 1):
            piece = Fraction(1, 1 << l)
            if piece > kraft_left:
                continue
            # all remaining symbols need at least 2^-cap each
            if kraft_left - piece < Fraction(remaining - 1, 1 << cap):
                continue
            dfs(idx + 1, l, kraft_left - piece, acc + weights[idx] * l)

    dfs(0, 1, Fraction(1), 0)
    return best[0]


def package_merge_lengths(counts, L) -> list:
    """Optimal length-limited code lengths (max <= L) via package-merge.
    Returns lengths aligned with the positive entries of ``counts``."""
    weights = [c for c in counts if c > 0]
    n = len(weights)
    if n == 1:
        return [1]
    assert n <= (1 << L), "infeasible limit"
    order = sorted(range(n), key=lambda i: (weights[i], i))
    leaves = [(weights[i], (i,)) for i in order]
    prev = list(leaves)
    for _ in range(L - 1):
        packages = []
        for j in range(0, len(prev) - 1, 2):
            packages.append(
                (prev[j][0] + prev[j + 1][0], prev[j][1] + prev[j + 1][1])
            )
        prev = sorted(leaves + packages, key=lambda x: x[0])
    lengths = [0] * n
    for _, syms in prev[: 2 * n - 2]:
        for s in syms:
            lengths[s] += 1
    return lengths


def optimal_restricted_weighted(counts, L) -> int:
    weights = [c for c in counts if c > 0]
    lengths = package_merge_lengths(counts, L)
    return sum(w * l for w, l in zip(weights, lengths))


# ------------------------------------------------------------ code checks


def is_prefix_free(codewords) -> bool:
    """codewords: iterable of (bits, len)."""
    seen = sorted((format(b, f"0{l}b") for b, l in codewords))
    for a, b in zip(seen, seen[1:]):
        if b.startswith(a):
            return False
    return len(set(seen)) == len(seen)


def linear_scan_decode(codewords, window: int, width: int):
    """(index, len) of the codeword prefixing the window, by trying all."""
    for idx, (bits, l) in enumerate(codewords):
        if l <= width and (window >> (width - l)) == bits:
            return idx, l
    return None
