"""Brute-force reference implementations.

Nothing here shares code with the fast paths: step boundaries come from
``math.comb``, steps from a linear scan, and every set is an explicit
filtered list.  Exponential in ``n``; guarded accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError, RefusalError
from .permutations import PermutationTable

__all__ = [
    "ORACLE_MAX_LEVEL",
    "TABLE_MAX_LEVEL",
    "OracleSets",
    "oracle_sets",
    "oracle_quantile",
    "oracle_f",
    "oracle_g",
    "oracle_h",
    "oracle_ew",
]

ORACLE_MAX_LEVEL = 16
TABLE_MAX_LEVEL = 12
_EW_SCAN_BITS = 24


def _guard(n: int) -> None:
    if n < 1:
        raise DomainError(f"level n must be positive, got {n}")
    if n > ORACLE_MAX_LEVEL:
        raise RefusalError(f"oracle refuses n={n} > {ORACLE_MAX_LEVEL}")


def _guard_table(n: int) -> None:
    _guard(n)
    if n > TABLE_MAX_LEVEL:
        raise RefusalError(f"oracle tables refuse n={n} > {TABLE_MAX_LEVEL}")


def _popcount(k: int) -> int:
    return bin(k).count("1")


def _boundaries(n: int) -> list[int]:
    out = [0]
    for i in range(n + 1):
        out.append(out[-1] + math.comb(n, i))
    return out


def _step(bounds: list[int], k: int) -> int:
    i = 0
    while bounds[i + 1] <= k:
        i += 1
    return i


@dataclass(frozen=True)
class OracleSets:
    """Explicit sorted member lists of every family at one level."""

    n: int
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...]
    A1: tuple[tuple[int, ...], ...]
    B1: tuple[tuple[int, ...], ...]
    C1: dict
    C1bar: dict
    A2: tuple[tuple[int, ...], ...]
    B2: tuple[tuple[int, ...], ...]

    def get(self, kind: str, i: int, j: int | None = None) -> tuple[int, ...]:
        if kind in ("C1", "C1bar"):
            return getattr(self, kind)[(i, j)]
        return getattr(self, kind)[i]


def oracle_sets(n: int) -> OracleSets:
    _guard(n)
    bounds = _boundaries(n)
    atoms = range(1 << n)
    step = [_step(bounds, k) for k in atoms]
    wt = [_popcount(k) for k in atoms]
    levels = range(n + 1)

    A = tuple(tuple(k for k in atoms if step[k] == i) for i in levels)
    B = tuple(tuple(k for k in atoms if wt[k] == i) for i in levels)
    A1 = tuple(tuple(k for k in A[i] if wt[k] != i) for i in levels)
    B1 = tuple(tuple(k for k in B[i] if step[k] != i) for i in levels)
    C1 = {(i, j): tuple(k for k in A[i] if wt[k] == j) for i in levels for j in levels if i != j}

    C1bar = {}
    for (i, j), members in C1.items():
        g_ij, g_ji = len(members), len(C1[(j, i)])
        if g_ij <= g_ji:
            C1bar[(i, j)] = members
        elif i > j:
            C1bar[(i, j)] = members[:g_ji]
        else:
            C1bar[(i, j)] = members[g_ij - g_ji:]

    paired_out = [set() for _ in levels]
    paired_in = [set() for _ in levels]
    for (i, j), members in C1bar.items():
        paired_out[i].update(members)
        paired_in[j].update(members)
    A2 = tuple(tuple(k for k in A1[i] if k not in paired_out[i]) for i in levels)
    B2 = tuple(tuple(k for k in B1[i] if k not in paired_in[i]) for i in levels)
    return OracleSets(n, A, B, A1, B1, C1, C1bar, A2, B2)


def oracle_quantile(n: int) -> list[int]:
    """The walk values ``-n + 2 * popcount(k)`` over all atoms, sorted."""
    _guard(n)
    return sorted(-n + 2 * _popcount(k) for k in range(1 << n))


def oracle_f(n: int) -> PermutationTable:
    """Dense table of the order-preserving rule: block ``i`` zipped onto weight class ``i``."""
    _guard_table(n)
    sets = oracle_sets(n)
    table = [0] * (1 << n)
    for block, target in zip(sets.A, sets.B):
        for k, m in zip(block, target):
            table[k] = m
    return PermutationTable(n, tuple(table))


def oracle_g(n: int) -> PermutationTable:
    _guard_table(n)
    sets = oracle_sets(n)
    table = list(range(1 << n))
    for block, target in zip(sets.A1, sets.B1):
        for k, m in zip(block, target):
            table[k] = m
    return PermutationTable(n, tuple(table))


def oracle_h(n: int) -> PermutationTable:
    _guard_table(n)
    sets = oracle_sets(n)
    table = list(range(1 << n))
    for (i, j), members in sets.C1bar.items():
        for k, m in zip(members, sets.C1bar[(j, i)]):
            table[k] = m
    for block, target in zip(sets.A2, sets.B2):
        for k, m in zip(block, target):
            table[k] = m
    return PermutationTable(n, tuple(table))


def oracle_ew(j: int, t: int) -> int:
    """The ``t``-th positive integer of weight ``j``, by scanning."""
    if j < 1 or t < 1:
        raise DomainError("oracle_ew needs j >= 1 and t >= 1")
    if t > math.comb(_EW_SCAN_BITS, j):
        raise RefusalError(f"oracle_ew({j}, {t}) lies beyond the scan limit 2**{_EW_SCAN_BITS}")
    seen = 0
    x = 0
    while seen < t:
        x += 1
        seen += _popcount(x) == j
    return x
