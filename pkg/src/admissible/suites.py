"""Verification suites run by ``admissible verify``.

Each suite takes a level ``n`` and returns a list of :class:`Check` results.
Nothing is raised for a failed check; exceptions that signal a broken
invariant are caught and reported as failures too.
"""

from __future__ import annotations

import concurrent.futures
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from .arrays import (
    build_nontrim,
    find_swap_witness,
    permutation_from_row,
    row_from_permutation,
    row_nonpersistence,
    verify_row,
)
from .exceptions import DomainError, InvariantError
from .numeric import istep, quantile_value, sbc_row, weight
from .oracles import TABLE_MAX_LEVEL, oracle_f, oracle_g, oracle_h, oracle_quantile, oracle_sets
from .permutations import (
    MAX_ENUMERATION_LEVEL,
    admissible_count,
    dense_table,
    enumerate_admissible,
    f,
    fixed_points,
    g,
    h,
    inv_f,
    is_admissible,
    nonpersistence_witness,
    two_cycles,
)
from .tame import TameRelation, beta_rank, card, enumerate_with_probes, member, size

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _levels(n: int, cap: int | None = None) -> range:
    if n < 1:
        raise DomainError(f"level n must be positive, got {n}")
    if cap is not None and n > cap:
        raise DomainError(f"this suite supports n <= {cap}, got {n}")
    return range(1, n + 1)


# ---------------------------------------------------------------------------
# identities


def identities(n: int) -> list[Check]:
    """Lower-bound identities for F, G, H and the step-boundary recovery through ``inv_f``, at every level up to ``n``."""
    checks = []
    for rule, fn in (("F", f), ("G", g), ("H", h)):
        bad = [m for m in _levels(n) if 1 + sum(fn(m, i) for i in range(1, m + 1)) != 1 << m]
        checks.append(Check(f"{rule}: 1 + sum of images of 1..n equals 2**n", not bad, _first(bad)))
    bad = [m for m in _levels(n) if 2 * f(m, m) != 1 << m]
    checks.append(Check("F(n, n) = 2**(n-1)", not bad, _first(bad)))
    bad = [m for m in range(2, n + 1) if 2 * max(g(m, m), g(m, m - 1)) != 1 << m]
    checks.append(Check("max(G(n, n), G(n, n-1)) = 2**(n-1)", not bad, _first(bad)))
    bad = [
        (m, i)
        for m in _levels(n)
        for i in range(1, m + 1)
        if inv_f(m, (1 << i) - 1) != sbc_row(m)[i]
    ]
    checks.append(Check("SBC(n, i) = inv_f(n, 2**i - 1)", not bad, _first(bad)))
    return checks


def _first(bad: list) -> str:
    if not bad:
        return ""
    return f"{len(bad)} failures, first at {bad[0]}"


# ---------------------------------------------------------------------------
# oracle equivalence


def relations(n: int) -> Iterable[TameRelation]:
    for i in range(n + 1):
        for kind in ("A", "B", "A1", "B1", "A2", "B2"):
            yield TameRelation(kind, n, i)
        for j in range(n + 1):
            if j != i:
                yield TameRelation("C1", n, i, j)
                yield TameRelation("C1bar", n, i, j)


def relation_mismatches(rel: TameRelation, members: tuple[int, ...]) -> list[str]:
    """Every disagreement between the fast counting routines and an explicit member list."""
    n = rel.n
    out = []
    if size(rel) != len(members):
        out.append(f"size {size(rel)} != {len(members)}")
    present = set(members)
    running = 0
    for x in range(1 << n):
        hit = x in present
        if member(rel, x) != hit:
            out.append(f"member({x})")
        if x:
            running += hit
            if card(rel, x) != running:
                out.append(f"card({x})")
    for s, x in enumerate(members, 1):
        value, probes = enumerate_with_probes(rel, s)
        if value != x:
            out.append(f"enumerate({s})")
        if probes > n + 2:
            out.append(f"enumerate({s}) used {probes} probes")
    return out


def oracle_level(n: int) -> list[Check]:
    checks = []
    for name, fast, slow in (("f", f, oracle_f), ("g", g, oracle_g), ("h", h, oracle_h)):
        table = slow(n)
        bad = [k for k in range(1 << n) if fast(n, k) != table[k]]
        checks.append(Check(f"n={n}: {name} matches its oracle table", not bad, _first(bad)))

    sets = oracle_sets(n)
    bad_rel = []
    for rel in relations(n):
        problems = relation_mismatches(rel, sets.get(rel.kind, rel.i, rel.j))
        if problems:
            bad_rel.append(f"{rel}: {problems[0]}")
    checks.append(Check(f"n={n}: card/size/member/enumerate match explicit sets", not bad_rel, _first(bad_rel)))

    bad = [
        (j, b)
        for j in range(n + 1)
        for b in range(1, 1 << n)
        if beta_rank(n, j, b) != card(TameRelation("B", n, j), b)
    ]
    checks.append(Check(f"n={n}: beta_rank matches card on weight classes", not bad, _first(bad)))

    quantiles = [quantile_value(n, k) for k in range(1 << n)]
    checks.append(Check(f"n={n}: quantile values are the sorted walk values", quantiles == oracle_quantile(n)))
    return checks


def oracle(n: int, workers: int = 1) -> list[Check]:
    levels = _levels(n, TABLE_MAX_LEVEL)
    if workers <= 1:
        results = [oracle_level(m) for m in levels]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(oracle_level, levels))
    return [c for level in results for c in level]


# ---------------------------------------------------------------------------
# counting, round trips and structure


def count(n: int) -> list[Check]:
    _levels(n, MAX_ENUMERATION_LEVEL)
    expected = admissible_count(n)
    seen = 0
    all_ok = True
    for pi in enumerate_admissible(n):
        seen += 1
        all_ok = all_ok and is_admissible(pi)
    passed = seen == expected and all_ok
    return [Check(f"{seen} admissible, expected {expected}", passed)]


DENSE_SUITE_LEVEL = 14


def roundtrip(n: int) -> list[Check]:
    _levels(n, DENSE_SUITE_LEVEL)
    checks = []
    for rule in "FGH":
        pi = dense_table(rule, n)
        row = row_from_permutation(pi)
        report = verify_row(row)
        checks.append(Check(f"n={n}: {rule} row round trip", permutation_from_row(row) == pi))
        checks.append(Check(f"n={n}: {rule} row sums, balance, independence", report.ok, _report(report)))
    if n <= 3:
        bad = 0
        for pi in enumerate_admissible(n):
            row = row_from_permutation(pi)
            if permutation_from_row(row) != pi or not verify_row(row).ok:
                bad += 1
        checks.append(Check(f"n={n}: every admissible permutation round trips", bad == 0, f"{bad} failures" if bad else ""))
    return checks


def _report(report) -> str:
    if report.ok:
        return ""
    return (
        f"sum {len(report.sum_violations)}, balance {len(report.balance_violations)}, "
        f"independence {len(report.independence_violations)}"
    )


def structure(n: int) -> list[Check]:
    _levels(n, DENSE_SUITE_LEVEL)
    checks = []
    G, H = dense_table("G", n), dense_table("H", n)
    expected = frozenset(k for k in range(1 << n) if weight(k) == istep(n, k))
    checks.append(Check(f"n={n}: G fixes exactly the atoms with weight = step", fixed_points(G) == expected))
    checks.append(Check(f"n={n}: H has the fixed points of G", fixed_points(H) == expected))
    paired = [
        k for k in range(1 << n)
        if weight(k) != istep(n, k) and member(TameRelation("C1bar", n, istep(n, k), weight(k)), k)
    ]
    bad = [k for k in paired if H[H[k]] != k]
    checks.append(Check(f"n={n}: H is an involution on paired atoms", not bad, _first(bad)))
    if n <= MAX_ENUMERATION_LEVEL:
        best = max(len(two_cycles(pi)) for pi in enumerate_admissible(n) if fixed_points(pi) == expected)
        mine = len(two_cycles(H))
        checks.append(Check(f"n={n}: no admissible permutation with these fixed points has more 2-cycles than H ({mine})", mine >= best, f"best {best}"))
    return checks


def nonpersistence(n: int) -> list[Check]:
    _levels(n, DENSE_SUITE_LEVEL - 1)
    checks = []
    for rule in "FGH":
        lo, hi = dense_table(rule, n), dense_table(rule, n + 1)
        checks.append(_attempt(f"n={n}: {rule} level n+1 departs from level n", lambda: nonpersistence_witness(lo, hi)))
        checks.append(_attempt(
            f"n={n}: {rule} row of size n+1 departs from row of size n",
            lambda: row_nonpersistence(row_from_permutation(lo), row_from_permutation(hi)),
        ))
    if n >= 2:
        checks.append(_nontrim(n))
    return checks


def _attempt(name: str, action: Callable[[], object]) -> Check:
    try:
        witness = action()
    except InvariantError as exc:
        return Check(name, False, str(exc))
    return Check(name, True, f"witness {witness}")


def _nontrim(n: int) -> Check:
    row = row_from_permutation(dense_table("F", n))
    try:
        witness = find_swap_witness(row)
    except DomainError as exc:
        return Check(f"n={n}: non-trim refinement", False, str(exc))
    refined = build_nontrim(row, witness)
    table = refined.table
    c = witness.i1 - 1
    depends = bool((table[0::2, c] != table[1::2, c]).any())
    ok = verify_row(refined).ok and depends
    return Check(f"n={n}: non-trim refinement at resolution {n + 1} verifies", ok, f"witness {tuple(witness)}")


SUITES: dict[str, Callable[..., list[Check]]] = {
    "identities": identities,
    "oracle": oracle,
    "count": count,
    "roundtrip": roundtrip,
    "structure": structure,
    "nonpersistence": nonpersistence,
}


SUITE_CAPS: dict[str, int | None] = {
    "identities": None,
    "oracle": TABLE_MAX_LEVEL,
    "count": MAX_ENUMERATION_LEVEL,
    "roundtrip": DENSE_SUITE_LEVEL,
    "structure": DENSE_SUITE_LEVEL,
    "nonpersistence": DENSE_SUITE_LEVEL - 1,
}


def run_suite(name: str, n: int, workers: int = 1) -> list[Check]:
    if name == "all":
        out = []
        for suite, cap in SUITE_CAPS.items():
            if cap is None or n <= cap:
                out.extend(run_suite(suite, n, workers))
        return out
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}")
    if name == "oracle":
        return oracle(n, workers)
    return SUITES[name](n)
