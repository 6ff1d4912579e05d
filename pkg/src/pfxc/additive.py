"""Additive-redundancy codec: expected codeword length within epsilon of
optimal, with the code stored as a depth sequence behind a wavelet tree.

Encoding symbol c reads its depth S[c] and its offset rank_{S[c]}(S, c);
decoding inverts a (depth, offset) pair with select_d(S, o).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .canonical import CanonicalTable, Codeword, build_table
from .distribution import Distribution
from .errors import BoundViolationError, ParameterError
from .huffman import LengthAssignment, huffman_lengths, weighted_length
from .restrict import ceil_log2, restrict
from .wavelet import WaveletTree

MAX_INV_EPSILON = 1 << 20  # keeps L within one machine word at any sane n


def _check_epsilon(epsilon: Fraction) -> Fraction:
    epsilon = Fraction(epsilon)
    if not (0 < epsilon < Fraction(1, 2)):
        raise ParameterError("epsilon out of range (0, 1/2)")
    if 1 / epsilon > MAX_INV_EPSILON:
        raise ParameterError(f"1/epsilon exceeds {MAX_INV_EPSILON}")
    return epsilon


def plan_L(n: int, epsilon) -> int:
    """Maximum codeword length ceil(log2 n) + ceil(log2(2/epsilon))."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    epsilon = _check_epsilon(epsilon)
    # smallest k with 2^k >= 2/epsilon, exact rational arithmetic
    k = 0
    while (epsilon.numerator << k) < 2 * epsilon.denominator:
        k += 1
    return ceil_log2(n) + k


@dataclass
class AdditiveCodec:
    n: int                      # original alphabet size (incl. zero counts)
    epsilon: Fraction
    L: int
    assignment: LengthAssignment
    table: CanonicalTable
    depths: WaveletTree         # S[c] = codeword length of coded symbol c
    symbol_map: tuple           # coded index -> original symbol index
    _coded: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self._coded:
            self._coded = {s: i for i, s in enumerate(self.symbol_map)}

    @property
    def coded_n(self) -> int:
        return len(self.symbol_map)

    @property
    def max_len(self) -> int:
        return self.assignment.max_len

    def encode_symbol(self, symbol: int) -> Codeword:
        coded = self._coded.get(symbol)
        if coded is None:
            raise ValueError(f"symbol {symbol} has no codeword (zero count)")
        pos = coded + 1
        depth = self.depths.access(pos)
        offset = self.depths.rank(depth, pos)
        return self.table.codeword_of(depth, offset)

    def decode_symbol(self, window: int, width: int) -> tuple:
        """(symbol, consumed_bits) for the codeword starting the window."""
        depth, offset = self.table.decode_prefix(window, width)
        pos = self.depths.select(depth, offset)
        return self.symbol_map[pos - 1], depth

    def measure_depth_entropy(self) -> float:
        """Empirical zero-order entropy of the depth sequence, in bits."""
        import math

        n = self.coded_n
        freq = {}
        for l in self.assignment.lengths:
            freq[l] = freq.get(l, 0) + 1
        return sum(c / n * math.log2(n / c) for c in freq.values())

    def weighted(self, d: Distribution) -> int:
        return weighted_length(self.assignment, d)

    @classmethod
    def from_lengths(
        cls,
        lengths: Sequence[int],
        symbol_map: Sequence[int],
        n: int,
        epsilon,
    ) -> "AdditiveCodec":
        assignment = LengthAssignment(lengths=tuple(lengths))
        table = build_table(assignment)
        tree = WaveletTree(assignment.lengths, assignment.max_len)
        return cls(
            n=n,
            epsilon=Fraction(epsilon),
            L=plan_L(max(len(symbol_map), 1), epsilon),
            assignment=assignment,
            table=table,
            depths=tree,
            symbol_map=tuple(symbol_map),
        )


def build(d: Distribution, epsilon, check_bound: bool = True) -> AdditiveCodec:
    epsilon = _check_epsilon(epsilon)
    symbol_map = tuple(d.positive_symbols())
    k = len(symbol_map)
    L = plan_L(k, epsilon)
    if k == 1:
        assignment = LengthAssignment(lengths=(1,))
    else:
        assignment = restrict(d, L)
    codec = AdditiveCodec(
        n=d.n,
        epsilon=epsilon,
        L=L,
        assignment=assignment,
        table=build_table(assignment),
        depths=WaveletTree(assignment.lengths, assignment.max_len),
        symbol_map=symbol_map,
    )
    if check_bound and k > 1:
        excess = codec.weighted(d) - weighted_length(huffman_lengths(d), d)
        if excess * epsilon.denominator > epsilon.numerator * d.total:
            raise BoundViolationError(
                f"additive redundancy {excess} exceeds epsilon * total"
            )
    return codec
