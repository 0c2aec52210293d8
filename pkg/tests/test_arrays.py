import numpy as np
import pytest

from admissible import DomainError, NotAdmissibleError, RefusalError
from admissible.arrays import (
    RademacherRow,
    SwapWitness,
    build_nontrim,
    find_swap_witness,
    lift,
    permutation_from_row,
    row_from_permutation,
    row_nonpersistence,
    verify_row,
)
from admissible.numeric import quantile_value
from admissible.permutations import PermutationTable, dense_table, enumerate_admissible


def test_level_one_row():
    row = row_from_permutation(dense_table("F", 1))
    assert row.signs(0) == (-1,)
    assert row.signs(1) == (1,)


def test_sign_vector_of_f():
    row = row_from_permutation(dense_table("F", 8))
    assert row.signs(15) == (-1, -1, -1, 1, -1, -1, -1, 1)


@pytest.mark.parametrize("n", [1, 4, 8, 10])
@pytest.mark.parametrize("rule", "FGH")
def test_round_trip_and_report(rule, n):
    pi = dense_table(rule, n)
    row = row_from_permutation(pi)
    assert row.is_trim
    assert permutation_from_row(row) == pi
    assert verify_row(row).ok
    sums = row.table.sum(axis=1)
    assert all(int(sums[k]) == quantile_value(n, k) for k in range(1 << n))


def test_round_trip_over_every_admissible():
    for n in (1, 2, 3):
        for pi in enumerate_admissible(n):
            assert permutation_from_row(row_from_permutation(pi)) == pi


def test_non_admissible_input_rejected():
    with pytest.raises(NotAdmissibleError):
        row_from_permutation(PermutationTable(3, tuple(range(8))))


def test_duplicate_pattern_rejected():
    table = np.array(row_from_permutation(dense_table("F", 3)).table)
    table[2] = table[1]
    with pytest.raises(NotAdmissibleError, match="share the sign pattern"):
        permutation_from_row(RademacherRow(3, table=table))


def test_single_flip_breaks_the_sum_at_that_atom():
    table = np.array(row_from_permutation(dense_table("G", 6)).table)
    table[20, 3] *= -1
    report = verify_row(RademacherRow(6, table=table))
    assert report.sum_violations == [20]
    assert report.balance_violations == [4]
    assert not report.independent and not report


def test_row_validation():
    with pytest.raises(DomainError):
        RademacherRow(2, table=np.zeros((4, 2)))
    with pytest.raises(DomainError):
        RademacherRow(3, 2, table=np.ones((4, 3)))
    with pytest.raises(RefusalError):
        RademacherRow(2, 21, table=np.ones((2, 2)))


def test_pointwise_row_for_large_n():
    pi = PermutationTable.from_rule("F", 64)
    row = row_from_permutation(pi)
    assert not row.is_dense
    assert sum(row.signs(12345)) == quantile_value(64, 12345)
    with pytest.raises(RefusalError):
        row.table


def test_swap_witness_on_f6():
    row = row_from_permutation(dense_table("F", 6))
    w = find_swap_witness(row)
    assert w == SwapWitness(1, 2, 5, 6)
    a, b = row.signs(w.k1), row.signs(w.k2)
    assert (a[0], b[0], a[1], b[1]) == (-1, 1, 1, -1)
    assert a[2:] == b[2:]


def test_swap_witness_needs_two_coordinates():
    with pytest.raises(DomainError):
        find_swap_witness(row_from_permutation(dense_table("F", 1)))


def test_nontrim_refinement():
    row = row_from_permutation(dense_table("F", 6))
    w = find_swap_witness(row)
    refined = build_nontrim(row, w)
    assert refined.resolution == 7 and not refined.is_trim
    report = verify_row(refined)
    assert report.ok

    table, parent = refined.table, row.table
    c1, c2 = w.i1 - 1, w.i2 - 1
    assert table[2 * w.k1, c1] != table[2 * w.k1 + 1, c1]
    for k in (w.k1, w.k2):
        for child in (2 * k, 2 * k + 1):
            assert table[child, c1] + table[child, c2] == parent[k, c1] + parent[k, c2]
            assert table[child, c1] * table[child, c2] == parent[k, c1] * parent[k, c2]
    untouched = [a for a in range(128) if a >> 1 not in (w.k1, w.k2)]
    assert np.array_equal(table[untouched], parent[[a >> 1 for a in untouched]])


def test_invalid_witness_rejected():
    row = row_from_permutation(dense_table("F", 6))
    with pytest.raises(DomainError):
        build_nontrim(row, (1, 2, 6, 5))
    with pytest.raises(DomainError):
        build_nontrim(row, (1, 2, 0, 1))


def test_lift_duplicates():
    row = row_from_permutation(dense_table("H", 5))
    lifted = lift(row)
    assert lifted.resolution == 6
    assert lifted.signs(9) == row.signs(4)


@pytest.mark.parametrize("rule", "FGH")
def test_row_nonpersistence(rule):
    lo = row_from_permutation(dense_table(rule, 6))
    hi = row_from_permutation(dense_table(rule, 7))
    i, atom = row_nonpersistence(lo, hi)
    assert 1 <= i <= 6
    assert lo.signs(atom >> 1)[i - 1] != hi.signs(atom)[i - 1]
