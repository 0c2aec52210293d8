"""Counted set families over ``{0, ..., 2**n - 1}`` and their enumerators.

A :class:`TameRelation` names one set of atoms.  For every set the prefix
count ``card(rel, x) = |set ∩ {1, ..., x}|`` is computed from closed forms
in time polynomial in ``n``; membership and the ``s``-th smallest element are
then derived from the prefix count alone.

Kinds, for a fixed level ``n`` (``step`` is :func:`~admissible.numeric.istep`):

``A``      atoms with ``step == i`` (an interval of the SBC row)
``B``      atoms with ``weight == i``
``A1``     ``A`` minus the atoms with ``weight == step``
``B1``     ``B`` minus the atoms with ``weight == step``
``C1``     atoms with ``step == i`` and ``weight == j`` (``i != j``)
``C1bar``  the part of ``C1(i, j)`` that is paired with ``C1(j, i)``
``A2``     ``A1`` minus every ``C1bar(i, ·)``
``B2``     ``B1`` minus every ``C1bar(·, i)``
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exceptions import DomainError
from .numeric import (
    binomial,
    count_weight_upto,
    istep,
    sbc_row,
    weight,
    weight_distribution,
)

__all__ = [
    "KINDS",
    "TameRelation",
    "card",
    "member",
    "size",
    "enumerate_rel",
    "enumerate_with_probes",
    "beta_rank",
    "ew",
    "gamma_total",
    "gamma_bar_total",
]

KINDS = ("A", "B", "A1", "B1", "C1", "C1bar", "A2", "B2")
_PAIR_KINDS = frozenset({"C1", "C1bar"})


@dataclass(frozen=True)
class TameRelation:
    """Descriptor of one counted set; ``j`` is present only for ``C1``/``C1bar``."""

    kind: str
    n: int
    i: int
    j: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown relation kind {self.kind!r}")
        if self.n < 1:
            raise DomainError(f"level n must be positive, got {self.n}")
        if not 0 <= self.i <= self.n:
            raise DomainError(f"index i={self.i} outside [0, {self.n}]")
        if self.kind in _PAIR_KINDS:
            if self.j is None or not 0 <= self.j <= self.n:
                raise DomainError(f"{self.kind} needs a second index 0 <= j <= {self.n}")
            if self.j == self.i:
                raise DomainError(f"{self.kind} needs j != i (got i = j = {self.i})")
        elif self.j is not None:
            raise DomainError(f"kind {self.kind} takes no second index")

    def __str__(self) -> str:
        idx = f"{self.i}" if self.j is None else f"{self.i},{self.j}"
        return f"{self.kind}[{self.n};{idx}]"


# ---------------------------------------------------------------------------
# cached boundary quantities


@lru_cache(maxsize=1 << 16)
def _boundary_beta(n: int, j: int, idx: int) -> int:
    """Weight-``j`` atoms in ``[1, SBC(n, idx) - 1]``."""
    return count_weight_upto(j, sbc_row(n)[idx] - 1)


@lru_cache(maxsize=256)
def _boundary_dist(n: int, idx: int) -> tuple[int, ...]:
    """``_boundary_beta(n, j, idx)`` for every ``j`` at once."""
    return tuple(weight_distribution(sbc_row(n)[idx] - 1, n))


def gamma_total(n: int, i: int, j: int) -> int:
    """``|C1(n; i, j)|``: atoms of step ``i`` and weight ``j``."""
    if i == j:
        raise DomainError("gamma_total needs i != j")
    return _boundary_beta(n, j, i + 1) - _boundary_beta(n, j, i)


def gamma_bar_total(n: int, i: int, j: int) -> int:
    """``|C1bar(n; i, j)|`` which is symmetric in ``i`` and ``j``."""
    return min(gamma_total(n, i, j), gamma_total(n, j, i))


@lru_cache(maxsize=256)
def _pair_table(n: int, i: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Per-``j`` totals around index ``i``.

    Returns ``(out, into, paired_prefix)`` where ``out[j] = |C1(i, j)|``,
    ``into[j] = |C1(j, i)|`` and ``paired_prefix[J]`` sums
    ``min(out[j], into[j])`` over ``j < J``, ``j != i``.
    """
    lo, hi = _boundary_dist(n, i), _boundary_dist(n, i + 1)
    out = [hi[j] - lo[j] for j in range(n + 1)]
    column = [_boundary_beta(n, i, idx) for idx in range(n + 2)]
    into = [column[j + 1] - column[j] for j in range(n + 1)]
    out[i] = into[i] = 0
    prefix = [0]
    for j in range(n + 1):
        prefix.append(prefix[-1] + min(out[j], into[j]))
    return tuple(out), tuple(into), tuple(prefix)


# ---------------------------------------------------------------------------
# prefix counts; every helper accepts 0 <= x < 2**n and counts {1, ..., x}


def _alpha(n: int, i: int, x: int) -> int:
    row = sbc_row(n)
    first = max(row[i], 1)
    last = min(x, row[i + 1] - 1)
    return last - first + 1 if last >= first else 0


def _fixed(n: int, i: int, x: int, beta_x: int | None = None) -> int:
    """Atoms in ``[1, x]`` with step and weight both equal to ``i``."""
    row = sbc_row(n)
    if x < row[i]:
        return 0
    if x < row[i + 1]:
        if beta_x is None:
            beta_x = count_weight_upto(i, x)
        return beta_x - _boundary_beta(n, i, i)
    return _boundary_beta(n, i, i + 1) - _boundary_beta(n, i, i)


def _gamma1(n: int, i: int, j: int, x: int, beta_x: int | None = None) -> int:
    """Atoms in ``[1, x]`` with step ``i`` and weight ``j``; ``beta_x`` may carry ``count_weight_upto(j, x)``."""
    row = sbc_row(n)
    if x < row[i]:
        return 0
    if x < row[i + 1]:
        if beta_x is None:
            beta_x = count_weight_upto(j, x)
        return beta_x - _boundary_beta(n, j, i)
    return _boundary_beta(n, j, i + 1) - _boundary_beta(n, j, i)


def _trim(g1: int, g_ij: int, g_ji: int, i: int, j: int) -> int:
    """Prefix count of ``C1bar(i, j)`` from the prefix count ``g1`` of ``C1(i, j)``."""
    if g_ij <= g_ji:
        return g1
    if i > j:
        # keep the smallest g_ji elements
        return min(g1, g_ji)
    # keep the largest g_ji elements
    return max(0, g1 - (g_ij - g_ji))


def _gamma_bar(n: int, i: int, j: int, x: int) -> int:
    return _trim(_gamma1(n, i, j, x), gamma_total(n, i, j), gamma_total(n, j, i), i, j)


def _alpha2(n: int, i: int, x: int) -> int:
    row = sbc_row(n)
    if x < row[i]:
        return 0
    out, into, prefix = _pair_table(n, i)
    if x >= row[i + 1] - 1:
        x = row[i + 1] - 1
        partial = out
    else:
        dist = weight_distribution(x, n)
        lo = _boundary_dist(n, i)
        partial = [dist[j] - lo[j] for j in range(n + 1)]
    paired = 0
    for j in range(n + 1):
        if j != i and out[j]:
            paired += _trim(partial[j], out[j], into[j], i, j)
    return _alpha(n, i, x) - _fixed(n, i, x) - paired


def _beta1(n: int, i: int, x: int, beta_x: int | None = None) -> int:
    if beta_x is None:
        beta_x = count_weight_upto(i, x)
    return beta_x - _fixed(n, i, x, beta_x)


def _beta2(n: int, i: int, x: int) -> int:
    if x == 0:
        return 0
    out, into, prefix = _pair_table(n, i)
    beta_x = count_weight_upto(i, x)
    step = istep(n, x)
    paired = prefix[step]
    if step != i and into[step]:
        g1 = _gamma1(n, step, i, x, beta_x)
        paired += _trim(g1, into[step], out[step], step, i)
    return _beta1(n, i, x, beta_x) - paired


def _count(rel: TameRelation, x: int) -> int:
    n, i, j = rel.n, rel.i, rel.j
    if x <= 0:
        return 0
    kind = rel.kind
    if kind == "A":
        return _alpha(n, i, x)
    if kind == "B":
        return count_weight_upto(i, x)
    if kind == "A1":
        return _alpha(n, i, x) - _fixed(n, i, x)
    if kind == "B1":
        return _beta1(n, i, x)
    if kind == "C1":
        return _gamma1(n, i, j, x)
    if kind == "C1bar":
        return _gamma_bar(n, i, j, x)
    if kind == "A2":
        return _alpha2(n, i, x)
    return _beta2(n, i, x)


def _contains_zero(rel: TameRelation) -> bool:
    return rel.kind in ("A", "B") and rel.i == 0


# ---------------------------------------------------------------------------
# public surface


def card(rel: TameRelation, x: int) -> int:
    """``|set ∩ {1, ..., x}|`` for ``1 <= x < 2**n``."""
    if not 1 <= x < (1 << rel.n):
        raise DomainError(f"card argument x={x} outside [1, 2**{rel.n})")
    return _count(rel, x)


def member(rel: TameRelation, m: int) -> bool:
    """Membership decided from two prefix counts."""
    if not 0 <= m < (1 << rel.n):
        raise DomainError(f"member argument m={m} outside [0, 2**{rel.n})")
    if m == 0:
        return _contains_zero(rel)
    return _count(rel, m) - _count(rel, m - 1) == 1


def size(rel: TameRelation) -> int:
    return _count(rel, (1 << rel.n) - 1) + _contains_zero(rel)


def enumerate_with_probes(rel: TameRelation, s: int) -> tuple[int, int]:
    """The ``s``-th smallest element and the number of prefix-count probes used.

    Bisects ``(a, b]`` starting from ``(0, 2**n - 1]``, keeping ``s`` equal
    to the rank of the target inside the current window; the window halves
    on every probe, so at most ``n`` probes are made.
    """
    total = size(rel)
    if not 1 <= s <= total:
        raise DomainError(f"rank s={s} outside [1, {total}] for {rel}")
    if _contains_zero(rel):
        if s == 1:
            return 0, 0
        s -= 1
    a, b = 0, (1 << rel.n) - 1
    count_a = 0
    probes = 0
    while b - a > 1:
        mid = (a + b) // 2
        count_mid = _count(rel, mid)
        probes += 1
        if count_mid - count_a >= s:
            b = mid
        else:
            s -= count_mid - count_a
            a, count_a = mid, count_mid
    return b, probes


def enumerate_rel(rel: TameRelation, s: int) -> int:
    """The ``s``-th smallest element (1-based) of the set named by ``rel``."""
    return enumerate_with_probes(rel, s)[0]


def beta_rank(n: int, j: int, b: int) -> int:
    """Weight-``j`` integers in ``[1, b]`` by the combinadic sum over the set bits of ``b``.

    With set-bit positions ``p_1 > p_2 > ...`` (position ``p`` carries
    ``2**(p - 1)``), the ``s``-th set bit contributes ``C(p_s - 1, j + 1 - s)``;
    ``b`` itself adds one when its weight is ``j``.
    """
    if n < 1 or not 0 <= j <= n:
        raise DomainError(f"beta_rank needs n >= 1 and 0 <= j <= n, got n={n}, j={j}")
    if not 1 <= b < (1 << n):
        raise DomainError(f"beta_rank argument b={b} outside [1, 2**{n})")
    if j == 0:
        return 0
    positions = [p for p in range(b.bit_length(), 0, -1) if (b >> (p - 1)) & 1]
    total = 0
    for s, p in enumerate(positions[: j + 1], start=1):
        if j + 1 - s <= p - 1:
            total += binomial(p - 1, j + 1 - s)
    return total + (len(positions) == j)


def _level_for(j: int, t: int) -> int:
    """Smallest ``n >= j`` with ``C(n, j) >= t``."""
    lo = max(j, 1)
    if binomial(lo, j) >= t:
        return lo
    hi = lo * 2
    while binomial(hi, j) < t:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if binomial(mid, j) >= t:
            hi = mid
        else:
            lo = mid
    return hi


def ew(j: int, t: int) -> int:
    """The ``t``-th positive integer of weight ``j`` (``0`` when ``j == 0``)."""
    if j < 0:
        raise DomainError(f"ew needs j >= 0, got {j}")
    if j == 0:
        return 0
    if t < 1:
        raise DomainError(f"ew needs t >= 1 when j >= 1, got t={t}")
    n = _level_for(j, t)
    return enumerate_rel(TameRelation("B", n, j), t)


def weight_class_rank(n: int, i: int, m: int) -> int:
    """1-based rank of ``m`` among the weight-``i`` atoms of level ``n``."""
    if weight(m) != i:
        raise DomainError(f"m={m} does not have weight {i}")
    return 1 if i == 0 else count_weight_upto(i, m)
