import pytest

from admissible import DomainError, RefusalError
from admissible.numeric import quantile_value
from admissible.oracles import oracle_ew, oracle_f, oracle_g, oracle_h, oracle_quantile, oracle_sets
from admissible.permutations import dense_table


def test_example_sets():
    sets = oracle_sets(8)
    assert sets.C1[(2, 4)] == (15, 23, 27, 29, 30)
    assert sets.C1[(4, 2)] == (96, 129, 130, 132, 136, 144, 160)
    assert sets.C1bar[(4, 2)] == (96, 129, 130, 132, 136)
    assert sets.A[0] == (0,)


def test_quantile():
    assert oracle_quantile(1) == [-1, 1]
    assert oracle_quantile(2) == [-2, 0, 0, 2]
    for n in (6, 7):
        q = oracle_quantile(n)
        assert q == sorted(q) == [quantile_value(n, k) for k in range(1 << n)]


def test_table_examples():
    assert oracle_f(8)[15] == 17
    assert oracle_g(8)[15] == 40
    assert oracle_h(8)[96] == 15
    assert oracle_g(4)[4] == 4


@pytest.mark.parametrize("n", range(1, 10))
def test_tables_match_rules(n):
    assert oracle_f(n) == dense_table("F", n)
    assert oracle_g(n) == dense_table("G", n)
    assert oracle_h(n) == dense_table("H", n)


def test_ew_scan():
    assert oracle_ew(2, 7) == 17
    assert oracle_ew(1, 5) == 16
    assert oracle_ew(3, 1) == 7


def test_guards():
    with pytest.raises(RefusalError):
        oracle_sets(17)
    with pytest.raises(RefusalError):
        oracle_f(13)
    with pytest.raises(DomainError):
        oracle_ew(0, 1)
    with pytest.raises(RefusalError):
        oracle_ew(1, 30)
