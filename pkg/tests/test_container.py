import random
import struct
from fractions import Fraction

import pytest

from pfxc import additive, container, distribution, multiplicative
from pfxc.errors import EmptyDistributionError, FormatError, TruncatedPayloadError


def _bits_of(codec, symbols):
    return [(codec.encode_symbol(s).bits, codec.encode_symbol(s).len)
            for s in symbols]


def test_header_roundtrip():
    h = container.Header(
        mode=container.MODE_ADDITIVE, n=256, param=Fraction(1, 10),
        m=1234, model_len=77,
    )
    assert container.Header.unpack(h.pack()) == h


def test_header_rejects_bad_magic():
    h = container.Header(0, 256, Fraction(1, 10), 1, 1).pack()
    with pytest.raises(FormatError):
        container.Header.unpack(b"XXXX" + h[4:])


def test_header_rejects_bad_version():
    h = bytearray(container.Header(0, 256, Fraction(1, 10), 1, 1).pack())
    h[4] = 9
    with pytest.raises(FormatError):
        container.Header.unpack(bytes(h))


def test_header_rejects_bad_mode():
    h = bytearray(container.Header(0, 256, Fraction(1, 10), 1, 1).pack())
    h[5] = 7
    with pytest.raises(FormatError):
        container.Header.unpack(bytes(h))


def test_additive_model_roundtrip_dense():
    d = distribution.gen_zipf(100, 1.0)
    codec = additive.build(d, Fraction(1, 10))
    # dense mapping requires n == coded_n
    blob = container.serialize_additive_model(codec)
    back = container.deserialize_additive_model(blob, d.n, Fraction(1, 10))
    syms = d.positive_symbols()
    assert _bits_of(back, syms) == _bits_of(codec, syms)


def test_additive_model_roundtrip_with_bitmap():
    counts = [0, 9, 0, 0, 4, 2, 0, 1]
    d = distribution.from_counts(counts)
    codec = additive.build(d, Fraction(1, 4))
    blob = container.serialize_additive_model(codec)
    back = container.deserialize_additive_model(blob, d.n, Fraction(1, 4))
    assert back.symbol_map == codec.symbol_map
    syms = d.positive_symbols()
    assert _bits_of(back, syms) == _bits_of(codec, syms)


def test_additive_model_constant_depth_is_small():
    d = distribution.gen_uniform(256)
    codec = additive.build(d, Fraction(1, 10))
    blob = container.serialize_additive_model(codec)
    # zero-entropy depth sequence: flag + k + max_depth + table + n/8 bits
    L = codec.max_len
    assert len(blob) <= (L + 2) + 256 // 8 + 8


def test_multiplicative_model_roundtrip():
    d = distribution.gen_zipf(300, 1.0)
    codec = multiplicative.build(d, Fraction(2))
    blob = container.serialize_multiplicative_model(codec)
    back = container.deserialize_multiplicative_model(blob, d.n, Fraction(2))
    assert back.alpha_f == codec.alpha_f
    assert back.L == codec.L
    syms = d.positive_symbols()
    assert _bits_of(back, syms) == _bits_of(codec, syms)
    # decode paths agree too
    W = codec.code_width
    for s in syms:
        cw = codec.encode_symbol(s)
        assert back.decode_symbol(cw.bits << (W - cw.len), W) == (s, cw.len)


def test_multiplicative_model_roundtrip_with_bitmap():
    counts = [3 if i % 5 == 0 else 0 for i in range(60)]
    d = distribution.from_counts(counts)
    codec = multiplicative.build(d, Fraction(2))
    blob = container.serialize_multiplicative_model(codec)
    back = container.deserialize_multiplicative_model(blob, d.n, Fraction(2))
    assert back.symbol_map == codec.symbol_map
    syms = d.positive_symbols()
    assert _bits_of(back, syms) == _bits_of(codec, syms)


def test_multiplicative_empty_f_blob_is_fixed_size():
    d = distribution.gen_uniform(32)
    codec = multiplicative.build(d, Fraction(3))
    assert codec.codebook == {}
    blob = container.serialize_multiplicative_model(codec)
    # flags + k + L + short + tlen + alpha + |F| + first_code table
    assert len(blob) == 1 + 4 + 3 + 8 + 4 + 0


def test_compress_roundtrip_simple():
    data = b"aaaa"
    blob = container.compress_stream(container.MODE_ADDITIVE, Fraction(1, 4), data)
    assert container.decompress_stream(blob) == data


@pytest.mark.parametrize("mode", [container.MODE_ADDITIVE,
                                  container.MODE_MULTIPLICATIVE])
def test_compress_roundtrip_text(mode):
    data = ("the quick brown fox jumps over the lazy dog " * 50).encode()
    param = Fraction(1, 10) if mode == container.MODE_ADDITIVE else Fraction(2)
    blob = container.compress_stream(mode, param, data)
    assert container.decompress_stream(blob) == data


@pytest.mark.parametrize("mode", [container.MODE_ADDITIVE,
                                  container.MODE_MULTIPLICATIVE])
def test_compress_roundtrip_random_bytes(mode):
    rng = random.Random(4)
    data = bytes(rng.randrange(256) for _ in range(30000))
    param = Fraction(1, 10) if mode == container.MODE_ADDITIVE else Fraction(2)
    blob = container.compress_stream(mode, param, data)
    assert container.decompress_stream(blob) == data


def test_compress_empty_input_rejected():
    with pytest.raises(EmptyDistributionError):
        container.compress_stream(container.MODE_ADDITIVE, Fraction(1, 4), b"")


def test_decompress_truncated_model():
    blob = container.compress_stream(
        container.MODE_ADDITIVE, Fraction(1, 4), b"hello world"
    )
    with pytest.raises(TruncatedPayloadError):
        container.decompress_stream(blob[: container.HEADER_SIZE + 2])


def test_decompress_truncated_payload():
    data = b"mississippi" * 40
    blob = container.compress_stream(container.MODE_ADDITIVE, Fraction(1, 4), data)
    with pytest.raises(TruncatedPayloadError):
        container.decompress_stream(blob[:-20])


def test_decompress_wrong_magic():
    blob = container.compress_stream(container.MODE_ADDITIVE, Fraction(1, 4), b"abc")
    with pytest.raises(FormatError):
        container.decompress_stream(b"NOPE" + blob[4:])


def test_u16_alphabet_roundtrip():
    rng = random.Random(8)
    units = [rng.choice([7, 300, 40000, 65535]) for _ in range(5000)]
    data = struct.pack(f"<{len(units)}H", *units)
    for mode, param in (
        (container.MODE_ADDITIVE, Fraction(1, 10)),
        (container.MODE_MULTIPLICATIVE, Fraction(2)),
    ):
        blob = container.compress_stream(mode, param, data, alphabet="u16")
        assert container.decompress_stream(blob) == data


def test_zipf_additive_model_size_regime():
    d = distribution.gen_zipf(4096, 1.0)
    eps = Fraction(1, 16)
    codec = additive.build(d, eps)
    blob = container.serialize_additive_model(codec)
    h0 = codec.measure_depth_entropy()
    n = d.n
    limit = n * (h0 + 1) / 8 + (codec.max_len + 2) + n / 8 + 16
    assert len(blob) <= limit


def test_direct_decoder_agrees_with_lut():
    rng = random.Random(12)
    data = bytes(rng.choice(b"abcdefgh" * 3 + b"ijklmnop") for _ in range(4000))
    blob = container.compress_stream(container.MODE_ADDITIVE, Fraction(1, 10), data)
    header, codec, payload = container.load_codec(blob)
    width = codec.max_len
    via_lut = container._decode_lut(codec, payload, header.m, width)
    via_direct = container._decode_direct(codec, payload, header.m, width)
    assert via_lut == via_direct
    assert bytes(via_direct) == data


def test_wide_code_uses_direct_path():
    # a deep zipf-weighted u16 sample pushes the code width past the LUT cap
    rng = random.Random(13)
    pool = range(1, 3001)
    weights = [1.0 / r for r in pool]
    units = rng.choices(pool, weights=weights, k=60000)
    data = struct.pack(f"<{len(units)}H", *units)
    blob = container.compress_stream(
        container.MODE_ADDITIVE, Fraction(1, 100), data, alphabet="u16"
    )
    assert container.decompress_stream(blob) == data
