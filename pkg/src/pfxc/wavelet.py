"""Binary wavelet tree with rank/select/access over small alphabets.

The stored sequence is the depth sequence of a canonical code, so the
alphabet is tiny (at most max codeword length values) and a plain binary
tree of accelerated bitvectors is all that is needed.  Positions and
occurrence ranks are 1-based in the public API.
"""
from __future__ import annotations

import bisect

import numpy as np

SUPERBLOCK_WORDS = 8  # 512-bit superblocks over 64-bit blocks
SELECT_SAMPLE = 512

_POPBYTE = [bin(i).count("1") for i in range(256)]


class BitVec:
    """Packed bit vector with two-level rank counts and sampled selects."""

    def __init__(self, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        self.n = int(bits.size)
        packed = np.packbits(bits)  # MSB-first within each byte
        pad = (-len(packed)) % 8
        if pad:
            packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
        words = packed.view(">u8")
        self._words = words.tolist()
        counts = [_popcount(w) for w in self._words]
        # exclusive cumulative ones per superblock, and per block within it
        self._super = [0]
        self._block = []
        run = 0
        for i, c in enumerate(counts):
            if i % SUPERBLOCK_WORDS == 0 and i:
                self._super.append(self._super[-1] + run)
                run = 0
            self._block.append(run)
            run += c
        self._super.append(self._super[-1] + run)
        self.ones = self._super[-1]
        self.zeros = self.n - self.ones
        # positions (0-based) of every SELECT_SAMPLE-th one / zero
        ones_pos = np.flatnonzero(bits)
        zeros_pos = np.flatnonzero(bits == 0)
        self._sample1 = ones_pos[::SELECT_SAMPLE].tolist()
        self._sample0 = zeros_pos[::SELECT_SAMPLE].tolist()
        # exclusive per-superblock cumulative ones, for select search
        self._super_cum = self._super

    def get(self, i: int) -> int:
        return (self._words[i >> 6] >> (63 - (i & 63))) & 1

    def rank1(self, i: int) -> int:
        """Ones among the first i bits (0 <= i <= n)."""
        if i <= 0:
            return 0
        if i >= self.n:
            return self.ones
        w, r = divmod(i, 64)
        out = self._super[w // SUPERBLOCK_WORDS] + self._block[w]
        if r:
            out += _popcount(self._words[w] >> (64 - r))
        return out

    def rank0(self, i: int) -> int:
        i = min(max(i, 0), self.n)
        return i - self.rank1(i)

    def select1(self, j: int) -> int:
        """0-based position of the j-th (1-based) set bit."""
        if not (1 <= j <= self.ones):
            raise ValueError(f"select1({j}) out of range (ones={self.ones})")
        lo = self._sample1[(j - 1) // SELECT_SAMPLE] // (64 * SUPERBLOCK_WORDS)
        sb = bisect.bisect_right(self._super_cum, j - 1, lo=lo) - 1
        need = j - self._super_cum[sb]
        w0 = sb * SUPERBLOCK_WORDS
        w1 = min(w0 + SUPERBLOCK_WORDS, len(self._words))
        for w in range(w0, w1):
            before = self._block[w]  # ones before w within the superblock
            in_word = _popcount(self._words[w])
            if before < need <= before + in_word:
                return w * 64 + _word_select1(self._words[w], need - before)
        raise AssertionError("select1 scan failed")

    def select0(self, j: int) -> int:
        """0-based position of the j-th (1-based) clear bit."""
        if not (1 <= j <= self.zeros):
            raise ValueError(f"select0({j}) out of range (zeros={self.zeros})")
        lo = self._sample0[(j - 1) // SELECT_SAMPLE] // (64 * SUPERBLOCK_WORDS)
        # zeros before superblock sb = 512*sb - ones before it
        sb = lo
        while (sb + 1) * SUPERBLOCK_WORDS * 64 - self._super_cum[sb + 1] < j \
                and sb + 1 < len(self._super_cum) - 1:
            sb += 1
        base_bits = sb * SUPERBLOCK_WORDS * 64
        need = j - (base_bits - self._super_cum[sb])
        w0 = sb * SUPERBLOCK_WORDS
        w1 = min(w0 + SUPERBLOCK_WORDS, len(self._words))
        for w in range(w0, w1):
            zeros_before = (w - w0) * 64 - self._block[w]
            in_word = 64 - _popcount(self._words[w])
            if zeros_before < need <= zeros_before + in_word:
                return w * 64 + _word_select1(
                    ~self._words[w] & 0xFFFFFFFFFFFFFFFF, need - zeros_before
                )
        raise AssertionError("select0 scan failed")


def _popcount(w: int) -> int:
    return w.bit_count()


def _word_select1(word: int, j: int) -> int:
    """0-based index of the j-th (1-based) set bit of a 64-bit word, MSB first."""
    idx = 0
    for shift in range(56, -8, -8):
        b = (word >> shift) & 0xFF
        c = _POPBYTE[b]
        if j <= c:
            for bit in range(8):
                if (b >> (7 - bit)) & 1:
                    j -= 1
                    if j == 0:
                        return idx + bit
        j -= c
        idx += 8
    raise AssertionError("bit not found in word")


class _Node:
    __slots__ = ("bv", "left", "right", "lo", "hi", "mid")

    def __init__(self, bv, left, right, lo, hi, mid):
        self.bv = bv
        self.left = left
        self.right = right
        self.lo = lo
        self.hi = hi
        self.mid = mid


class WaveletTree:
    """Sequence over values 1..sigma supporting access/rank/select."""

    def __init__(self, S, sigma: int):
        vals = np.asarray(S, dtype=np.int64)
        self.length = int(vals.size)
        self.sigma = sigma
        if self.length and (vals.min() < 1 or vals.max() > sigma):
            raise ValueError("sequence value out of [1, sigma]")
        self._root = self._build(vals - 1, 0, sigma)

    def _build(self, vals, lo, hi):
        if hi - lo == 1:
            return _Node(None, None, None, lo, hi, lo)
        mid = (lo + hi + 1) // 2
        bits = vals >= mid
        bv = BitVec(bits.astype(np.uint8))
        left = self._build(vals[~bits], lo, mid)
        right = self._build(vals[bits], mid, hi)
        return _Node(bv, left, right, lo, hi, mid)

    def access(self, i: int) -> int:
        if not (1 <= i <= self.length):
            raise ValueError(f"access position {i} out of [1, {self.length}]")
        node, pos = self._root, i - 1
        while node.bv is not None:
            if node.bv.get(pos):
                pos = node.bv.rank1(pos)
                node = node.right
            else:
                pos = node.bv.rank0(pos)
                node = node.left
        return node.lo + 1

    def rank(self, c: int, i: int) -> int:
        if not (1 <= c <= self.sigma):
            raise ValueError(f"value {c} out of [1, {self.sigma}]")
        if i == 0:
            return 0
        if not (1 <= i <= self.length):
            raise ValueError(f"rank position {i} out of [0, {self.length}]")
        node, cnt = self._root, i
        cv = c - 1
        while node.bv is not None:
            if cv >= node.mid:
                cnt = node.bv.rank1(cnt)
                node = node.right
            else:
                cnt = node.bv.rank0(cnt)
                node = node.left
        return cnt

    def select(self, c: int, j: int) -> int:
        if not (1 <= c <= self.sigma):
            raise ValueError(f"value {c} out of [1, {self.sigma}]")
        if j < 1:
            raise ValueError("select rank must be >= 1")
        path = []
        node = self._root
        cv = c - 1
        while node.bv is not None:
            right = cv >= node.mid
            path.append((node, right))
            node = node.right if right else node.left
        pos = j
        for parent, right in reversed(path):
            bv = parent.bv
            if right:
                if pos > bv.ones:
                    raise ValueError(f"fewer than {j} occurrences of {c}")
                pos = bv.select1(pos) + 1
            else:
                if pos > bv.zeros:
                    raise ValueError(f"fewer than {j} occurrences of {c}")
                pos = bv.select0(pos) + 1
        if not path and pos > self.length:
            raise ValueError(f"fewer than {j} occurrences of {c}")
        return pos
