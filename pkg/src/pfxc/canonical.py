"""Canonical code tables: first-codeword-per-length array plus a sorted
predecessor array of zero-padded first codewords for prefix decoding.

Codewords of one length are consecutive integers, so (length, offset)
converts to a codeword with one add, and a window converts back with one
predecessor search over at most L keys and one subtract.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence

from .errors import CorruptStreamError, KraftViolationError
from .huffman import LengthAssignment

MAX_LEN = 64  # one machine word of window


@dataclass(frozen=True)
class Codeword:
    bits: int
    len: int

    def __post_init__(self):
        if not (1 <= self.len <= MAX_LEN):
            raise ValueError(f"codeword length {self.len} out of [1, {MAX_LEN}]")
        if not (0 <= self.bits < (1 << self.len)):
            raise ValueError("codeword value does not fit its length")


class CanonicalTable:
    """First codeword and count per length 1..L.

    ``first_code[l]`` follows the canonical recurrence
    first_code[l+1] = (first_code[l] + count[l]) * 2, including lengths with
    zero count, so the table is well-defined for every l.
    """

    def __init__(self, first_code: Sequence[int], count: Sequence[int], L: int):
        # index 0 unused; entries 1..L
        self.first_code = list(first_code)
        self.count = list(count)
        self.L = L
        # predecessor keys: first codeword of each populated length,
        # left-padded with zeros to width L
        self._keys = []
        self._key_lens = []
        for l in range(1, L + 1):
            if self.count[l] > 0:
                self._keys.append(self.first_code[l] << (L - l))
                self._key_lens.append(l)

    @classmethod
    def from_lengths(cls, lengths: LengthAssignment) -> "CanonicalTable":
        return build_table(lengths)

    @classmethod
    def from_first_codes(
        cls, first_code: Sequence[int], count: Sequence[int], L: int
    ) -> "CanonicalTable":
        """Rebuild from serialized per-length data (index 0 unused)."""
        return cls(first_code, count, L)

    def codeword_of(self, depth: int, offset: int) -> Codeword:
        """Codeword for the offset-th symbol (1-based) at a given length."""
        if not (1 <= depth <= self.L) or not (1 <= offset <= self.count[depth]):
            raise ValueError(
                f"no codeword at depth={depth} offset={offset}"
            )
        return Codeword(bits=self.first_code[depth] + offset - 1, len=depth)

    def decode_prefix(self, window: int, width: int) -> tuple:
        """(depth, offset) of the codeword starting the window.

        ``window`` is an unsigned value of ``width`` >= L bits, MSB-aligned
        with the stream.  Predecessor search on the zero-padded first
        codewords identifies the length; the offset is the value difference.
        """
        if width < self.L:
            raise ValueError(f"window width {width} < L={self.L}")
        key = window >> (width - self.L)
        pos = bisect.bisect_right(self._keys, key) - 1
        if pos < 0:
            raise CorruptStreamError("window precedes every codeword")
        depth = self._key_lens[pos]
        code = window >> (width - depth)
        offset = code - self.first_code[depth] + 1
        if not (1 <= offset <= self.count[depth]):
            raise CorruptStreamError("window matches no codeword")
        return depth, offset


def build_table(lengths: LengthAssignment) -> CanonicalTable:
    """Canonical table for a length assignment; symbols of equal length are
    ordered by ascending symbol index (their dense position)."""
    L = lengths.max_len
    if L > MAX_LEN:
        raise ValueError(f"maximum length {L} exceeds {MAX_LEN}")
    count = [0] * (L + 1)
    for l in lengths.lengths:
        count[l] += 1
    first = [0] * (L + 1)
    code = 0
    for l in range(1, L + 1):
        first[l] = code
        code = (code + count[l]) << 1
        if code > (1 << (l + 1)):
            raise KraftViolationError("lengths overfill the code space")
    return CanonicalTable(first_code=first, count=count, L=L)


def assign_codewords(lengths: LengthAssignment) -> list:
    """Codeword per symbol position, canonical order within each length."""
    table = build_table(lengths)
    next_offset = [1] * (table.L + 1)
    out = []
    for l in lengths.lengths:
        out.append(table.codeword_of(l, next_offset[l]))
        next_offset[l] += 1
    return out
