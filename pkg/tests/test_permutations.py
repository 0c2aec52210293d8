import itertools

import pytest
from hypothesis import given, settings, strategies as st

from admissible import DomainError, InvariantError, NotAdmissibleError, RefusalError
from admissible.numeric import istep, sbc_row, weight
from admissible.permutations import (
    PermutationTable,
    SigmaSystem,
    admissible_count,
    dense_table,
    enumerate_admissible,
    f,
    fixed_points,
    from_sigma,
    g,
    h,
    inv_f,
    is_admissible,
    natural_encoding,
    nonpersistence_witness,
    sigma_decomposition,
    two_cycles,
    verify_lower_bound_identity,
)


def test_frozen_examples():
    assert f(8, 15) == 17
    assert inv_f(8, 17) == 15
    assert g(8, 15) == 40
    assert g(4, 4) == 4
    assert h(8, 15) == 96
    assert h(8, 96) == 15


@pytest.mark.parametrize("rule", [f, g, h, inv_f])
def test_rules_reject_out_of_range(rule):
    with pytest.raises(DomainError):
        rule(8, 256)
    with pytest.raises(DomainError):
        rule(0, 0)


@pytest.mark.parametrize("n", [1, 2, 5, 200])
def test_endpoints_are_fixed(n):
    top = (1 << n) - 1
    for rule in (f, g, h):
        assert rule(n, 0) == 0
        assert rule(n, top) == top


def test_natural_encoding():
    F = natural_encoding(f)
    assert F(0, 0) == 0
    assert F(3, 8) == 8
    assert F(3, 100) == 8
    assert F(8, 15) == 17


@pytest.mark.parametrize("n", range(1, 11))
def test_rule_tables_are_admissible(n):
    for rule in "FGH":
        assert is_admissible(dense_table(rule, n))


@given(st.integers(1, 300).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
@settings(max_examples=40, deadline=None)
def test_inverse_of_f(nk):
    n, k = nk
    m = f(n, k)
    assert weight(m) == istep(n, k)
    assert inv_f(n, m) == k
    assert f(n, inv_f(n, k)) == k


@given(st.integers(2, 120).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
@settings(max_examples=30, deadline=None)
def test_g_and_h_land_in_the_right_weight_class(nk):
    n, k = nk
    assert weight(g(n, k)) == istep(n, k)
    assert weight(h(n, k)) == istep(n, k)


@pytest.mark.parametrize("n", [6, 9])
def test_f_preserves_order_within_blocks(n):
    row = sbc_row(n)
    for i in range(n + 1):
        images = [f(n, k) for k in range(row[i], row[i + 1])]
        assert images == sorted(images)


def test_identity_is_not_admissible():
    assert not is_admissible(PermutationTable(3, tuple(range(8))))


def test_zero_must_be_fixed():
    swap = list(range(4))
    swap[0], swap[3] = 3, 0
    assert not is_admissible(PermutationTable(2, tuple(swap)))


def test_non_bijection_rejected():
    with pytest.raises(NotAdmissibleError):
        PermutationTable(2, (0, 1, 1, 3))


def test_rule_table_lazy_and_dense():
    lazy = PermutationTable.from_rule("H", 8)
    assert lazy(15) == lazy[15] == 96
    assert lazy == lazy.dense()
    assert lazy.inverse()(96) == 15
    with pytest.raises(RefusalError):
        PermutationTable.from_rule("F", 40).values


def test_counts():
    assert [admissible_count(n) for n in (1, 2, 3, 4)] == [1, 2, 36, 414720]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_is_exhaustive_and_distinct(n):
    tables = list(enumerate_admissible(n))
    assert len(tables) == admissible_count(n)
    assert len({t.values for t in tables}) == len(tables)
    assert all(is_admissible(t) for t in tables)


def test_enumeration_level_one_is_identity():
    assert [t.values for t in enumerate_admissible(1)] == [(0, 1)]


def test_enumeration_guard():
    with pytest.raises(RefusalError):
        next(enumerate_admissible(5))


def test_enumeration_order_is_deterministic():
    first = [t.values for t in itertools.islice(enumerate_admissible(3), 5)]
    again = [t.values for t in itertools.islice(enumerate_admissible(3), 5)]
    assert first == again
    assert first[0] == dense_table("F", 3).values


def test_sigma_of_f_is_identity():
    assert sigma_decomposition(dense_table("F", 4)).is_identity()
    assert from_sigma(SigmaSystem.identity(3)) == dense_table("F", 3)


def test_sigma_round_trip_over_all_admissible():
    for pi in enumerate_admissible(3):
        assert from_sigma(sigma_decomposition(pi)) == pi


def test_sigma_rejects_non_admissible():
    with pytest.raises(NotAdmissibleError):
        sigma_decomposition(PermutationTable(3, tuple(range(8))))


def test_sigma_system_validation():
    with pytest.raises(DomainError):
        SigmaSystem(2, ((1,), (1, 1), (1,)))


@pytest.mark.parametrize("rule,n", [("F", 64), ("G", 16), ("G", 64), ("H", 12), ("H", 37)])
def test_lower_bound_identity(rule, n):
    assert verify_lower_bound_identity(rule, n)


def test_lower_bound_identity_for_every_admissible():
    for n in (1, 2, 3):
        for pi in enumerate_admissible(n):
            assert verify_lower_bound_identity(pi, n)


def test_lower_bound_identity_detects_failure():
    assert not verify_lower_bound_identity(lambda n, k: k, 3)


def test_g_fixes_n_at_powers_of_two():
    for n in (2, 4, 8, 16, 32, 64, 128, 256):
        assert g(n, n) == n


def test_g_and_h_fixed_points():
    n = 8
    expected = {k for k in range(1 << n) if weight(k) == istep(n, k)}
    assert fixed_points(dense_table("G", n)) == expected
    assert fixed_points(dense_table("H", n)) == expected


def test_every_fixed_point_has_matching_weight():
    for pi in enumerate_admissible(3):
        assert all(weight(k) == istep(3, k) for k in fixed_points(pi))


def test_h_two_cycle_count_is_maximal_at_three():
    H = dense_table("H", 3)
    best = max(len(two_cycles(pi)) for pi in enumerate_admissible(3) if fixed_points(pi) == fixed_points(H))
    assert len(two_cycles(H)) == best


@pytest.mark.parametrize("rule", "FGH")
@pytest.mark.parametrize("n", [2, 4, 7])
def test_nonpersistence(rule, n):
    lo, hi = dense_table(rule, n), dense_table(rule, n + 1)
    k = nonpersistence_witness(lo, hi)
    assert k < 1 << n and lo(k) != hi(k)


@pytest.mark.parametrize("rule", "FGH")
def test_level_two_extends_level_one(rule):
    # both levels are the identity, so no witness exists
    with pytest.raises(InvariantError):
        nonpersistence_witness(dense_table(rule, 1), dense_table(rule, 2))
