import math

import pytest
from hypothesis import given, strategies as st

from pfxc import distribution
from pfxc.errors import EmptyDistributionError, ParameterError
from pfxc.huffman import huffman_lengths


def test_from_counts_uniform():
    d = distribution.from_counts([1, 1, 1, 1])
    assert d.total == 4
    assert d.n == 4
    assert all(d.probability(i) == 0.25 for i in range(4))


def test_from_counts_dyadic():
    d = distribution.from_counts([8, 4, 2, 1, 1])
    assert d.total == 16
    probs = [d.probability(i) for i in range(5)]
    assert [float(p) for p in probs] == [0.5, 0.25, 0.125, 0.0625, 0.0625]


def test_from_counts_all_zero_rejected():
    with pytest.raises(EmptyDistributionError):
        distribution.from_counts([0, 0])


def test_from_counts_negative_rejected():
    with pytest.raises(ValueError):
        distribution.from_counts([1, -1])


def test_positive_symbols_skips_zero_counts():
    d = distribution.from_counts([0, 3, 0, 1])
    assert d.positive_symbols() == [1, 3]


def test_entropy_uniform8():
    d = distribution.from_counts([1] * 8)
    assert distribution.entropy_bits(d) == pytest.approx(3.0, abs=1e-9)


def test_entropy_single_symbol():
    d = distribution.from_counts([5])
    assert distribution.entropy_bits(d) == pytest.approx(0.0, abs=1e-12)


def test_entropy_dyadic5():
    d = distribution.from_counts([8, 4, 2, 1, 1])
    assert distribution.entropy_bits(d) == pytest.approx(1.875, abs=1e-9)


@pytest.mark.parametrize("k", [1, 3, 7, 10])
def test_entropy_uniform_power_of_two_exact(k):
    d = distribution.from_counts([1] * (1 << k))
    assert distribution.entropy_bits(d) == pytest.approx(k, abs=1e-9)


def test_gen_dyadic_examples():
    assert distribution.gen_dyadic(5).counts == (8, 4, 2, 1, 1)
    assert distribution.gen_dyadic(2).counts == (1, 1)
    assert distribution.gen_dyadic(3).counts == (2, 1, 1)


def test_gen_dyadic_rejects_small_n():
    with pytest.raises(ParameterError):
        distribution.gen_dyadic(1)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 13])
def test_gen_dyadic_huffman_length_multiset(n):
    d = distribution.gen_dyadic(n)
    lengths = sorted(huffman_lengths(d).lengths)
    assert lengths == sorted(list(range(1, n)) + [n - 1])


def test_gen_zipf_singleton():
    d = distribution.gen_zipf(1, 1.0)
    assert d.n == 1
    assert d.counts[0] >= 1


def test_gen_zipf_harmonic_proportions():
    # weights 1 : 1/2 : 1/3 : 1/4 scaled by 10
    d = distribution.gen_zipf(4, 1.0)
    assert d.counts == (10, 5, 3, 2)


def test_gen_zipf_256_entropy_in_range():
    d = distribution.gen_zipf(256, 1.0)
    h = distribution.entropy_bits(d)
    assert 0.0 < h < 8.0


def test_gen_zipf_min_count_positive():
    for n in (5, 100, 1000):
        assert min(distribution.gen_zipf(n, 1.5).counts) >= 1


def test_gen_uniform():
    d = distribution.gen_uniform(6)
    assert d.counts == (1,) * 6
    with pytest.raises(ParameterError):
        distribution.gen_uniform(0)


def test_from_bytes_histogram():
    d = distribution.from_bytes(b"abracadabra")
    assert d.n == 256
    assert d.counts[ord("a")] == 5
    assert d.counts[ord("b")] == 2
    assert d.total == 11
    with pytest.raises(EmptyDistributionError):
        distribution.from_bytes(b"")


def test_from_u16le():
    d = distribution.from_u16le(bytes([0, 1, 0, 1, 2, 0]))
    assert d.n == 65536
    assert d.counts[256] == 2  # 0x0100
    assert d.counts[2] == 1
    with pytest.raises(ValueError):
        distribution.from_u16le(b"abc")


def test_from_count_file(tmp_path):
    p = tmp_path / "counts.txt"
    p.write_text("3 1 4 1 5")
    d = distribution.from_count_file(str(p))
    assert d.counts == (3, 1, 4, 1, 5)
    p.write_text("  ")
    with pytest.raises(EmptyDistributionError):
        distribution.from_count_file(str(p))


@given(st.lists(st.integers(min_value=0, max_value=10**6), min_size=1).filter(
    lambda xs: any(xs)))
def test_total_is_exact_sum(xs):
    d = distribution.from_counts(xs)
    assert d.total == sum(xs)


def test_entropy_handles_huge_counts():
    d = distribution.gen_dyadic(300)  # counts up to 2^298
    h = distribution.entropy_bits(d)
    assert math.isfinite(h)
    assert abs(h - 2.0) < 1e-6  # dyadic tail entropy converges to 2
