"""Multiplicative-redundancy codec: expected codeword length at most c times
optimal with a sublinear model.

Symbols whose restricted codeword is short (length <= floor(L/c) + 2) live
in a dictionary keyed by symbol; every other symbol is encoded as the fixed
width-(L+1) value alpha_f + a - 1, where alpha_f is the first long codeword
zero-extended to L+1 bits.  Decoding peeks L+1 bits and compares against
alpha_f, so both directions are a constant number of operations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .canonical import MAX_LEN, CanonicalTable, Codeword, build_table
from .distribution import Distribution
from .errors import BoundViolationError, CorruptStreamError, ParameterError
from .huffman import LengthAssignment, huffman_lengths, weighted_length
from .restrict import ceil_log2, restrict


def plan(n: int, c) -> tuple:
    """(L, short_limit): L = ceil(log2 n) + ceil(1/(c-1)) + 1,
    short_limit = floor(L/c) + 2."""
    c = Fraction(c)
    if c <= 1:
        raise ParameterError("c must be > 1")
    if n < 1:
        raise ParameterError("n must be >= 1")
    L = ceil_log2(n) + math.ceil(1 / (c - 1)) + 1
    if L + 1 > MAX_LEN:
        raise ParameterError(
            f"c={c} too close to 1 for n={n}: L+1 = {L + 1} exceeds {MAX_LEN}"
        )
    short_limit = math.floor(Fraction(L) / c) + 2
    return L, short_limit


@dataclass
class MultiplicativeCodec:
    n: int                      # original alphabet size (incl. zero counts)
    c: Fraction
    L: int
    short_limit: int
    assignment: LengthAssignment
    table: CanonicalTable       # over all restricted lengths
    codebook: dict              # coded symbol -> Codeword, short symbols only
    per_length: dict            # length -> coded symbols in codeword order
    alpha_f: int                # first new codeword, width L+1 bits
    fallback: bool              # all symbols stored, no new codewords
    symbol_map: tuple           # coded index -> original symbol index
    _coded: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self._coded:
            self._coded = {s: i for i, s in enumerate(self.symbol_map)}

    @property
    def coded_n(self) -> int:
        return len(self.symbol_map)

    @property
    def code_width(self) -> int:
        return self.L + 1

    def encode_symbol(self, symbol: int) -> Codeword:
        coded = self._coded.get(symbol)
        if coded is None:
            raise ValueError(f"symbol {symbol} has no codeword (zero count)")
        cw = self.codebook.get(coded)
        if cw is not None:
            return cw
        return Codeword(bits=self.alpha_f + coded, len=self.L + 1)

    def decode_symbol(self, window: int, width: int) -> tuple:
        """(symbol, consumed_bits); window must be at least L+1 bits wide,
        zero-padded if the stream tail is shorter."""
        if width < self.L + 1:
            raise ValueError(f"window width {width} < L+1 = {self.L + 1}")
        s = window >> (width - (self.L + 1))
        if s >= self.alpha_f:
            coded = s - self.alpha_f  # 0-based position in the coded alphabet
            if coded >= self.coded_n or coded in self.codebook:
                raise CorruptStreamError("new-codeword value out of range")
            return self.symbol_map[coded], self.L + 1
        depth, offset = self.table.decode_prefix(window, width)
        syms = self.per_length.get(depth)
        if syms is None or offset > len(syms):
            raise CorruptStreamError("short codeword matches no stored symbol")
        return self.symbol_map[syms[offset - 1]], depth

    def model_size_bits(self) -> int:
        """Serialized model size, excluding any O(n) remapping residue;
        fallback codecs report their true full size (all symbols stored)."""
        w = max(1, ceil_log2(max(self.coded_n, 2)))
        scalar_bits = 8 * (4 + 1 + 1 + 1 + 8 + 4)  # k, L, fallback, tlen, alpha, |F|
        table_len = max(self.per_length.keys(), default=0)
        table_bits = 64 * table_len
        entry_bits = len(self.codebook) * (w + 8)
        return scalar_bits + table_bits + entry_bits

    def weighted(self, d: Distribution) -> int:
        """Exact weighted emitted length: short symbols at their stored
        length, all others at L+1 bits."""
        positive = [c for c in d.counts if c > 0]
        total = 0
        for coded, cnt in enumerate(positive):
            cw = self.codebook.get(coded)
            total += cnt * (cw.len if cw is not None else self.L + 1)
        return total


def _assemble(
    n: int,
    c: Fraction,
    L: int,
    short_limit: int,
    assignment: LengthAssignment,
    symbol_map: tuple,
) -> MultiplicativeCodec:
    table = build_table(assignment)
    lengths = assignment.lengths
    k = len(lengths)

    long_lengths = sorted({l for l in lengths if l > short_limit})
    capacity = 0
    if long_lengths:
        cnt_per = {l: 0 for l in long_lengths}
        for l in lengths:
            if l > short_limit:
                cnt_per[l] += 1
        capacity = sum(cnt_per[l] << (L + 1 - l) for l in long_lengths)
    fallback = bool(long_lengths) and capacity < k

    store_limit = max(lengths) if fallback or not long_lengths else short_limit
    codebook = {}
    per_length = {}
    next_offset = {}
    for coded, l in enumerate(lengths):
        if l <= store_limit:
            off = next_offset.get(l, 1)
            codebook[coded] = table.codeword_of(l, off)
            per_length.setdefault(l, []).append(coded)
            next_offset[l] = off + 1
        else:
            # canonical offsets advance even for symbols not stored
            next_offset[l] = next_offset.get(l, 1) + 1

    if long_lengths and not fallback:
        l0 = long_lengths[0]
        alpha_f = table.first_code[l0] << (L + 1 - l0)
    else:
        alpha_f = 1 << (L + 1)  # sentinel: no window compares >= alpha_f

    return MultiplicativeCodec(
        n=n,
        c=c,
        L=L,
        short_limit=short_limit,
        assignment=assignment,
        table=table,
        codebook=codebook,
        per_length=per_length,
        alpha_f=alpha_f,
        fallback=fallback,
        symbol_map=symbol_map,
    )


def build(d: Distribution, c, check_bound: bool = True) -> MultiplicativeCodec:
    c = Fraction(c)
    symbol_map = tuple(d.positive_symbols())
    k = len(symbol_map)
    L, short_limit = plan(k, c)
    if k == 1:
        assignment = LengthAssignment(lengths=(1,))
    else:
        assignment = restrict(d, L)
    codec = _assemble(d.n, c, L, short_limit, assignment, symbol_map)
    if check_bound:
        w_codec = codec.weighted(d)
        w_huff = weighted_length(huffman_lengths(d), d)
        if w_codec * c.denominator > c.numerator * w_huff:
            raise BoundViolationError(
                f"weighted length {w_codec} exceeds c * optimal ({c} * {w_huff})"
            )
    return codec


def from_model(
    n: int,
    c,
    L: int,
    short_limit: int,
    entries: list,
    first_code: list,
    table_len: int,
    alpha_f: int,
    fallback: bool,
    symbol_map: tuple,
) -> MultiplicativeCodec:
    """Rebuild an equivalent codec from serialized model data.

    ``entries`` is a list of (coded symbol, length) pairs for every stored
    symbol.  Lengths of unstored symbols are unknown (that is the point of
    the sublinear model), so the reconstructed table covers stored lengths
    only and the assignment records L+1 for unstored symbols.
    """
    c = Fraction(c)
    k = len(symbol_map)
    count = [0] * (table_len + 1)
    per_length = {}
    for sym, l in sorted(entries, key=lambda e: (e[1], e[0])):
        count[l] += 1
        per_length.setdefault(l, []).append(sym)
    # symbols within a length are canonical by ascending index
    for l in per_length:
        per_length[l].sort()
    table = CanonicalTable.from_first_codes(first_code, count, table_len)
    codebook = {}
    for l, syms in per_length.items():
        for off, sym in enumerate(syms, start=1):
            codebook[sym] = table.codeword_of(l, off)
    stored = set(codebook)
    lengths = tuple(
        codebook[i].len if i in stored else L + 1 for i in range(k)
    )
    return MultiplicativeCodec(
        n=n,
        c=c,
        L=L,
        short_limit=short_limit,
        assignment=LengthAssignment(lengths=lengths),
        table=table,
        codebook=codebook,
        per_length=per_length,
        alpha_f=alpha_f,
        fallback=fallback,
        symbol_map=symbol_map,
    )
