"""PFXC container: header + serialized codec model + bit-packed payload.

Layout (all integers little-endian):
  magic "PFXC" | version u8 | mode u8 (0 additive, 1 multiplicative)
  n u32 | param_num u32 | param_den u32 | m u64 | model_len u32
  model blob | payload (m codewords, MSB-first, zero-padded to a byte)

The model is self-contained: restricted lengths, not counts, are stored,
and the canonical tables are rebuilt on load.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import additive, multiplicative
from .bitio import BitReader, BitWriter
from .canonical import assign_codewords
from .distribution import Distribution, from_bytes, from_u16le
from .errors import (
    CorruptStreamError,
    EmptyDistributionError,
    FormatError,
    TruncatedPayloadError,
)
from .huffman import LengthAssignment, huffman_lengths
from .restrict import ceil_log2

MAGIC = b"PFXC"
VERSION = 1
MODE_ADDITIVE = 0
MODE_MULTIPLICATIVE = 1

_HEADER = struct.Struct("<4sBBIIIQI")
HEADER_SIZE = _HEADER.size

_LUT_MAX_WIDTH = 16  # decode LUT cap; wider codes fall back to symbol-by-symbol


@dataclass(frozen=True)
class Header:
    mode: int
    n: int
    param: Fraction
    m: int
    model_len: int

    def pack(self) -> bytes:
        return _HEADER.pack(
            MAGIC,
            VERSION,
            self.mode,
            self.n,
            self.param.numerator,
            self.param.denominator,
            self.m,
            self.model_len,
        )

    @classmethod
    def unpack(cls, blob: bytes) -> "Header":
        if len(blob) < HEADER_SIZE:
            raise FormatError("container shorter than header")
        magic, version, mode, n, num, den, m, model_len = _HEADER.unpack_from(blob)
        if magic != MAGIC:
            raise FormatError("not a PFXC container")
        if version != VERSION:
            raise FormatError(f"unsupported container version {version}")
        if mode not in (MODE_ADDITIVE, MODE_MULTIPLICATIVE):
            raise FormatError(f"unknown mode byte {mode}")
        if den < 1:
            raise FormatError("parameter denominator must be >= 1")
        return cls(mode=mode, n=n, param=Fraction(num, den), m=m, model_len=model_len)


def _pack_symbol_bitmap(n: int, symbol_map) -> bytes:
    bits = np.zeros(n, dtype=np.uint8)
    bits[list(symbol_map)] = 1
    return np.packbits(bits).tobytes()


def _unpack_symbol_bitmap(blob: bytes, n: int) -> tuple:
    bits = np.unpackbits(np.frombuffer(blob, dtype=np.uint8), count=n)
    return tuple(int(i) for i in np.flatnonzero(bits))


# ---------------------------------------------------------------- additive


def serialize_additive_model(codec: additive.AdditiveCodec) -> bytes:
    """Depth sequence S compressed with its own canonical Huffman code over
    the depth alphabet, preceded by the inner length table and (when zero
    counts exist) the symbol presence bitmap."""
    k = codec.coded_n
    dense = codec.symbol_map == tuple(range(codec.n))
    out = bytearray()
    out.append(0 if dense else 1)
    out += struct.pack("<I", k)
    if not dense:
        out += _pack_symbol_bitmap(codec.n, codec.symbol_map)

    depths = codec.assignment.lengths
    max_depth = codec.assignment.max_len
    depth_counts = [0] * (max_depth + 1)
    for l in depths:
        depth_counts[l] += 1
    inner = _inner_lengths(depth_counts)
    out.append(max_depth)
    out += bytes(inner[1:])  # inner code length per depth value 1..max_depth

    inner_cw = _inner_codewords(inner)
    w = BitWriter()
    for l in depths:
        w.put_codeword(inner_cw[l])
    out += w.getvalue()
    return bytes(out)


def _inner_lengths(depth_counts) -> list:
    """Huffman code lengths over the depth alphabet (0 = depth absent)."""
    present = [v for v, c in enumerate(depth_counts) if c > 0]
    d = Distribution(
        counts=tuple(depth_counts), total=sum(depth_counts)
    )
    lens = huffman_lengths(d).lengths
    out = [0] * len(depth_counts)
    for v, l in zip(present, lens):
        out[v] = l
    return out


def _inner_codewords(inner_lengths) -> dict:
    present = [(v, l) for v, l in enumerate(inner_lengths) if l > 0]
    assignment = LengthAssignment(lengths=tuple(l for _, l in present))
    cws = assign_codewords(assignment)
    return {v: cw for (v, _), cw in zip(present, cws)}


def deserialize_additive_model(
    blob: bytes, n: int, epsilon: Fraction
) -> additive.AdditiveCodec:
    try:
        has_bitmap = blob[0]
        (k,) = struct.unpack_from("<I", blob, 1)
        pos = 5
        if has_bitmap:
            nbytes = (n + 7) // 8
            symbol_map = _unpack_symbol_bitmap(blob[pos : pos + nbytes], n)
            pos += nbytes
        else:
            symbol_map = tuple(range(n))
        if len(symbol_map) != k:
            raise FormatError("bitmap popcount disagrees with symbol count")
        max_depth = blob[pos]
        pos += 1
        inner = [0] + list(blob[pos : pos + max_depth])
        pos += max_depth
        inner_cw = _inner_codewords(inner)
        decode = {(cw.bits, cw.len): v for v, cw in inner_cw.items()}
        max_inner = max(cw.len for cw in inner_cw.values())
        r = BitReader(blob[pos:])
        lengths = []
        for _ in range(k):
            win = r.peek(max_inner)
            for ln in range(1, max_inner + 1):
                v = decode.get((win >> (max_inner - ln), ln))
                if v is not None:
                    r.consume(ln)
                    lengths.append(v)
                    break
            else:
                raise FormatError("corrupt inner depth code")
    except (IndexError, struct.error, TruncatedPayloadError) as e:
        raise FormatError(f"malformed additive model: {e}") from e
    return additive.AdditiveCodec.from_lengths(lengths, symbol_map, n, epsilon)


# ---------------------------------------------------------- multiplicative


def serialize_multiplicative_model(codec: multiplicative.MultiplicativeCodec) -> bytes:
    """Scalars, short-length first-codeword table, then (symbol, length)
    pairs for every stored symbol, bit-packed at ceil(log2 n) + 8 bits."""
    k = codec.coded_n
    dense = codec.symbol_map == tuple(range(codec.n))
    has_long = codec.alpha_f < (1 << (codec.L + 1))
    flags = (1 if codec.fallback else 0) | (2 if has_long else 0) | (0 if dense else 4)
    table_len = max(codec.per_length.keys(), default=0)
    out = bytearray()
    out.append(flags)
    out += struct.pack("<I", k)
    if not dense:
        out += _pack_symbol_bitmap(codec.n, codec.symbol_map)
    out.append(codec.L)
    out.append(codec.short_limit)
    out.append(table_len)
    out += struct.pack("<Q", codec.alpha_f if has_long else 0)
    out += struct.pack("<I", len(codec.codebook))
    for l in range(1, table_len + 1):
        out += struct.pack("<Q", codec.table.first_code[l])
    w = BitWriter()
    width = max(1, ceil_log2(max(k, 2)))
    for sym in sorted(codec.codebook):
        w.put(sym, width)
        w.put(codec.codebook[sym].len, 8)
    out += w.getvalue()
    return bytes(out)


def deserialize_multiplicative_model(
    blob: bytes, n: int, c: Fraction
) -> multiplicative.MultiplicativeCodec:
    try:
        flags = blob[0]
        fallback = bool(flags & 1)
        has_long = bool(flags & 2)
        has_bitmap = bool(flags & 4)
        (k,) = struct.unpack_from("<I", blob, 1)
        pos = 5
        if has_bitmap:
            nbytes = (n + 7) // 8
            symbol_map = _unpack_symbol_bitmap(blob[pos : pos + nbytes], n)
            pos += nbytes
        else:
            symbol_map = tuple(range(n))
        if len(symbol_map) != k:
            raise FormatError("bitmap popcount disagrees with symbol count")
        L = blob[pos]
        short_limit = blob[pos + 1]
        table_len = blob[pos + 2]
        pos += 3
        (alpha_f,) = struct.unpack_from("<Q", blob, pos)
        pos += 8
        (nstored,) = struct.unpack_from("<I", blob, pos)
        pos += 4
        first_code = [0] * (table_len + 1)
        for l in range(1, table_len + 1):
            (first_code[l],) = struct.unpack_from("<Q", blob, pos)
            pos += 8
        if not has_long:
            alpha_f = 1 << (L + 1)
        width = max(1, ceil_log2(max(k, 2)))
        r = BitReader(blob[pos:])
        entries = []
        for _ in range(nstored):
            sym = r.take(width)
            ln = r.take(8)
            if sym >= k or ln < 1 or ln > table_len:
                raise FormatError("model entry out of range")
            entries.append((sym, ln))
    except (IndexError, struct.error, TruncatedPayloadError) as e:
        raise FormatError(f"malformed multiplicative model: {e}") from e
    return multiplicative.from_model(
        n=n,
        c=c,
        L=L,
        short_limit=short_limit,
        entries=entries,
        first_code=first_code,
        table_len=table_len,
        alpha_f=alpha_f,
        fallback=fallback,
        symbol_map=symbol_map,
    )


# ----------------------------------------------------------------- streams


def _codeword_arrays(codec, n: int):
    """(bits, lens) per original symbol index; -1 length marks zero count."""
    bits = np.zeros(n, dtype=np.uint64)
    lens = np.zeros(n, dtype=np.int64)
    for sym in codec.symbol_map:
        cw = codec.encode_symbol(sym)
        bits[sym] = cw.bits
        lens[sym] = cw.len
    return bits, lens


def _pack_codewords(symbols: np.ndarray, bits: np.ndarray, lens: np.ndarray) -> bytes:
    """Vectorized MSB-first concatenation of per-symbol codewords."""
    sym_bits = bits[symbols]
    sym_lens = lens[symbols]
    total = int(sym_lens.sum())
    ends = np.cumsum(sym_lens)
    starts = ends - sym_lens
    out = np.zeros(total, dtype=np.uint8)
    max_len = int(sym_lens.max())
    for b in range(max_len):
        mask = sym_lens > b
        shifts = (sym_lens[mask] - 1 - b).astype(np.uint64)
        out[starts[mask] + b] = (sym_bits[mask] >> shifts) & np.uint64(1)
    return np.packbits(out).tobytes()


def _build_codec(mode: int, d: Distribution, param: Fraction):
    if mode == MODE_ADDITIVE:
        return additive.build(d, param)
    return multiplicative.build(d, param)


@dataclass
class CompressResult:
    blob: bytes
    distribution: Distribution
    codec: object
    model_bits: int
    payload_bits: int


def compress_stream_details(
    mode: int, param, data: bytes, alphabet: str = "byte"
) -> CompressResult:
    if not data:
        raise EmptyDistributionError("empty input")
    param = Fraction(param)
    if alphabet == "byte":
        d = from_bytes(data)
        symbols = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    elif alphabet == "u16":
        d = from_u16le(data)
        symbols = np.frombuffer(data, dtype="<u2").astype(np.int64)
    else:
        raise ValueError(f"unknown alphabet {alphabet!r}")
    codec = _build_codec(mode, d, param)
    model = _serialize_model(mode, codec)
    bits, lens = _codeword_arrays(codec, d.n)
    payload = _pack_codewords(symbols, bits, lens)
    header = Header(
        mode=mode, n=d.n, param=param, m=len(symbols), model_len=len(model)
    )
    return CompressResult(
        blob=header.pack() + model + payload,
        distribution=d,
        codec=codec,
        model_bits=8 * len(model),
        payload_bits=8 * len(payload),
    )


def compress_stream(mode: int, param, data: bytes, alphabet: str = "byte") -> bytes:
    return compress_stream_details(mode, param, data, alphabet).blob


def _serialize_model(mode: int, codec) -> bytes:
    if mode == MODE_ADDITIVE:
        return serialize_additive_model(codec)
    return serialize_multiplicative_model(codec)


def load_codec(blob: bytes):
    """(header, codec, payload) from a container blob."""
    header = Header.unpack(blob)
    model_end = HEADER_SIZE + header.model_len
    if len(blob) < model_end:
        raise TruncatedPayloadError("container ends inside the model blob")
    model = blob[HEADER_SIZE:model_end]
    if header.mode == MODE_ADDITIVE:
        codec = deserialize_additive_model(model, header.n, header.param)
    else:
        codec = deserialize_multiplicative_model(model, header.n, header.param)
    return header, codec, blob[model_end:]


def decompress_stream(blob: bytes) -> bytes:
    header, codec, payload = load_codec(blob)
    width = codec.max_len if header.mode == MODE_ADDITIVE else codec.code_width
    m = header.m
    # cheap sanity bound before decoding: every codeword is >= 1 bit
    if 8 * len(payload) < m:
        raise TruncatedPayloadError("truncated payload")
    if width <= _LUT_MAX_WIDTH:
        out = _decode_lut(codec, payload, m, width)
    else:
        out = _decode_direct(codec, payload, m, width)
    if header.n == 65536:
        return np.asarray(out, dtype="<u2").tobytes()
    return bytes(out)


def _decode_lut(codec, payload: bytes, m: int, width: int) -> list:
    sym_lut = [-1] * (1 << width)
    len_lut = [0] * (1 << width)
    for sym in codec.symbol_map:
        cw = codec.encode_symbol(sym)
        lo = cw.bits << (width - cw.len)
        for v in range(lo, lo + (1 << (width - cw.len))):
            sym_lut[v] = sym
            len_lut[v] = cw.len
    out = []
    append = out.append
    acc = 0
    nbits = 0
    pos = 0
    data = payload
    total_bits = 8 * len(data)
    consumed = 0
    for _ in range(m):
        while nbits < width and pos < len(data):
            acc = (acc << 8) | data[pos]
            pos += 1
            nbits += 8
        win = (acc >> (nbits - width)) if nbits >= width else (acc << (width - nbits))
        sym = sym_lut[win]
        if sym < 0:
            raise CorruptStreamError("corrupt codeword in payload")
        ln = len_lut[win]
        consumed += ln
        if consumed > total_bits:
            raise TruncatedPayloadError("truncated payload")
        if nbits >= ln:
            nbits -= ln
            acc &= (1 << nbits) - 1
        else:
            raise TruncatedPayloadError("truncated payload")
        append(sym)
    return out


def _decode_direct(codec, payload: bytes, m: int, width: int) -> list:
    r = BitReader(payload)
    out = []
    for _ in range(m):
        win = r.peek(width)
        sym, ln = codec.decode_symbol(win, width)
        r.consume(ln)
        out.append(sym)
    return out
