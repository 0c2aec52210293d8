import math

import pytest
from hypothesis import given, strategies as st

from admissible import DomainError, DyadicIndex
from admissible.numeric import (
    binomial,
    binomial_row,
    bits,
    count_weight_upto,
    from_bits,
    istep,
    pascal_row,
    quantile_value,
    sbc,
    sbc_row,
    signs,
    walk_value,
    weight,
    weight_distribution,
)


def test_binomial_values():
    assert binomial(8, 4) == 70
    assert binomial(0, 0) == 1
    assert binomial(4096, 1) == 4096
    with pytest.raises(DomainError):
        binomial(3, 4)


@pytest.mark.parametrize("n", [0, 1, 5, 17, 64])
def test_rows_agree(n):
    assert tuple(pascal_row(n)) == binomial_row(n) == tuple(math.comb(n, i) for i in range(n + 1))


def test_sbc_row_endpoints():
    assert sbc_row(8) == (0, 1, 9, 37, 93, 163, 219, 247, 255, 256)
    assert sbc(3, 4) == 8
    assert sbc(4096, 4097) == 1 << 4096
    with pytest.raises(DomainError):
        sbc(3, 5)


def test_istep_is_block_index():
    n = 6
    row = sbc_row(n)
    for k in range(1 << n):
        i = istep(n, k)
        assert row[i] <= k < row[i + 1]


def test_walk_and_quantile():
    assert [walk_value(2, k) for k in range(4)] == [-2, 0, 0, 2]
    assert [quantile_value(2, k) for k in range(4)] == [-2, 0, 0, 2]
    assert quantile_value(4096, 1 << 4095) == 0
    with pytest.raises(DomainError):
        walk_value(3, 8)


def test_bits_big_endian():
    assert bits(8, 96) == (0, 1, 1, 0, 0, 0, 0, 0)
    assert signs(8, 17) == (-1, -1, -1, 1, -1, -1, -1, 1)
    assert from_bits(bits(8, 96)) == 96
    with pytest.raises(DomainError):
        from_bits([0, 2])


@given(st.integers(1, 200).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_bits_roundtrip(nk):
    n, k = nk
    assert from_bits(bits(n, k)) == k
    assert sum(signs(n, k)) == walk_value(n, k)


def test_dyadic_index():
    d = DyadicIndex(3, 5)
    assert d.left == (5, 8)
    assert d.children() == (DyadicIndex(4, 10), DyadicIndex(4, 11))
    assert d.children()[1].parent() == d
    with pytest.raises(DomainError):
        DyadicIndex(3, 8)


def test_count_weight_upto_matches_scan():
    for b in range(0, 300):
        for j in range(0, 10):
            expected = sum(1 for x in range(1, b + 1) if bin(x).count("1") == j)
            assert count_weight_upto(j, b) == expected, (j, b)


@given(st.integers(1, 1 << 40))
def test_weight_distribution_matches_kernel(b):
    n = b.bit_length() + 3
    assert weight_distribution(b, n) == [count_weight_upto(j, b) for j in range(n + 1)]


def test_weight_distribution_wide():
    b = (1 << 999) + 12345
    dist = weight_distribution(b, 1000)
    assert sum(dist) == b
    assert dist[500] == count_weight_upto(500, b)
