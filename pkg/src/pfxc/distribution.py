"""Symbol-frequency distributions: ingestion, entropy, and test generators."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptyDistributionError, ParameterError


@dataclass(frozen=True)
class Distribution:
    """Integer frequency counts over an alphabet of n symbol indices.

    Symbols with count 0 stay in ``counts`` (they keep their index) but are
    excluded from code construction downstream.
    """

    counts: tuple
    total: int

    @property
    def n(self) -> int:
        return len(self.counts)

    def positive_symbols(self) -> list:
        """Indices of symbols with a positive count, ascending."""
        return [i for i, c in enumerate(self.counts) if c > 0]

    def probability(self, i: int) -> Fraction:
        return Fraction(self.counts[i], self.total)


def from_counts(counts: Sequence[int]) -> Distribution:
    counts = tuple(int(c) for c in counts)
    if any(c < 0 for c in counts):
        raise ValueError("negative count")
    total = sum(counts)
    if total == 0:
        raise EmptyDistributionError("empty distribution: all counts are zero")
    return Distribution(counts=counts, total=total)


def from_bytes(data: bytes) -> Distribution:
    """Histogram of byte values; alphabet size is always 256."""
    if not data:
        raise EmptyDistributionError("empty input")
    counts = np.bincount(np.frombuffer(data, dtype=np.uint8), minlength=256)
    return from_counts(counts.tolist())


def from_u16le(data: bytes) -> Distribution:
    """Histogram of 16-bit little-endian units; alphabet size 65536."""
    if not data:
        raise EmptyDistributionError("empty input")
    if len(data) % 2:
        raise ValueError("u16 alphabet requires an even number of bytes")
    units = np.frombuffer(data, dtype="<u2")
    counts = np.bincount(units, minlength=65536)
    return from_counts(counts.tolist())


def from_count_file(path: str) -> Distribution:
    """Whitespace-separated integer counts in a text file."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise EmptyDistributionError("no counts in file")
    return from_counts([int(t) for t in tokens])


def entropy_bits(d: Distribution) -> float:
    """Zero-order entropy H(P) in bits per symbol.

    Works with arbitrarily large integer counts (log2 is taken on the
    integers directly; probabilities below float range contribute ~0).
    """
    log_total = math.log2(d.total)
    h = 0.0
    for c in d.counts:
        if c == 0:
            continue
        lc = math.log2(c)
        # probabilities below float range underflow to 0 and contribute ~0
        h += 2.0 ** (lc - log_total) * (log_total - lc)
    return h


def gen_dyadic(n: int) -> Distribution:
    """Skewed dyadic distribution: counts 2^(n-1-i), last two symbols equal.

    Its unique optimal code lengths are 1, 2, ..., n-1, n-1.
    """
    if n < 2:
        raise ParameterError("gen_dyadic requires n >= 2")
    counts = [1 << (n - 2 - i) for i in range(n - 1)]
    counts.append(1)
    return from_counts(counts)


def gen_zipf(n: int, s: float = 1.0) -> Distribution:
    """Zipf weights 1/rank^s, scaled by the smallest power of 10 that keeps
    the minimum truncated weight >= 1."""
    if n < 1:
        raise ParameterError("gen_zipf requires n >= 1")
    if s <= 0:
        raise ParameterError("gen_zipf requires s > 0")
    scale = 1
    while scale < n**s:
        scale *= 10
    counts = [max(1, int(scale / (r**s))) for r in range(1, n + 1)]
    return from_counts(counts)


def gen_uniform(n: int) -> Distribution:
    if n < 1:
        raise ParameterError("gen_uniform requires n >= 1")
    return from_counts([1] * n)
