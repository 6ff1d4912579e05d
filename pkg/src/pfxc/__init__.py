"""pfxc: compact prefix-code models with constant-time encode and decode.

Two codecs over a shared canonical-code core:

- additive: expected codeword length within epsilon of optimal, model
  stored as a compressed depth sequence behind a wavelet tree;
- multiplicative: expected length within a factor c of optimal, model
  stored sublinearly as a short-codeword dictionary plus one base value.
"""
from . import additive, multiplicative
from .canonical import CanonicalTable, Codeword, assign_codewords, build_table
from .container import (
    MODE_ADDITIVE,
    MODE_MULTIPLICATIVE,
    compress_stream,
    decompress_stream,
)
from .distribution import (
    Distribution,
    entropy_bits,
    from_bytes,
    from_count_file,
    from_counts,
    gen_dyadic,
    gen_uniform,
    gen_zipf,
)
from .huffman import LengthAssignment, huffman_lengths, weighted_length
from .restrict import redundancy_bound, restrict, restriction_bound
from .wavelet import BitVec, WaveletTree

__all__ = [
    "additive",
    "multiplicative",
    "CanonicalTable",
    "Codeword",
    "assign_codewords",
    "build_table",
    "MODE_ADDITIVE",
    "MODE_MULTIPLICATIVE",
    "compress_stream",
    "decompress_stream",
    "Distribution",
    "entropy_bits",
    "from_bytes",
    "from_count_file",
    "from_counts",
    "gen_dyadic",
    "gen_uniform",
    "gen_zipf",
    "LengthAssignment",
    "huffman_lengths",
    "weighted_length",
    "redundancy_bound",
    "restrict",
    "restriction_bound",
    "BitVec",
    "WaveletTree",
]

__version__ = "0.1.0"
