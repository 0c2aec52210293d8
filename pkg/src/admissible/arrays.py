"""Rows of a strong triangular Rademacher array, built from admissible permutations.

A row of size ``n`` is ``n`` sign-valued functions on the dyadic atoms of some
resolution ``r >= n``.  Atom ``a`` at resolution ``r`` carries one sign per
coordinate; coordinates are numbered ``1..n`` in the public API and stored
0-based in the arrays.  A row is trim when ``r == n``.

Given an admissible ``pi``, atom ``k`` gets the sign form of the bits of
``pi(k)``: coordinate ``i`` is ``+1`` exactly when bit ``i`` (big-endian) of
``pi(k)`` is set.  The coordinates then sum to the quantile walk on every
atom and, since ``pi`` is a bijection, every sign pattern occurs exactly
once, which makes the coordinates independent fair signs.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, InvariantError, NotAdmissibleError, RefusalError
from .numeric import sbc_row, signs as sign_vector
from .permutations import PermutationTable, is_admissible

__all__ = [
    "MAX_DENSE_RESOLUTION",
    "RademacherRow",
    "RowReport",
    "SwapWitness",
    "row_from_permutation",
    "permutation_from_row",
    "verify_row",
    "find_swap_witness",
    "build_nontrim",
    "lift",
    "row_nonpersistence",
]

MAX_DENSE_RESOLUTION = 20
_DENSE_RULE_LEVEL = 12


class RademacherRow:
    """Sign vectors indexed by atoms of a fixed dyadic resolution.

    Dense rows hold a read-only ``int8`` array of shape ``(2**resolution, n)``;
    large rows hold a pointwise evaluator ``atom -> tuple of signs`` instead.
    """

    __slots__ = ("n", "resolution", "_table", "_evaluator")

    def __init__(
        self,
        n: int,
        resolution: int | None = None,
        *,
        table: np.ndarray | None = None,
        evaluator: Callable[[int], tuple[int, ...]] | None = None,
    ) -> None:
        resolution = n if resolution is None else resolution
        if n < 1:
            raise DomainError(f"a row needs at least one coordinate, got n={n}")
        if resolution < n:
            raise DomainError(f"resolution {resolution} is below the row size {n}")
        if (table is None) == (evaluator is None):
            raise DomainError("give exactly one of table or evaluator")
        if table is not None:
            if resolution > MAX_DENSE_RESOLUTION:
                raise RefusalError(f"dense rows are capped at resolution {MAX_DENSE_RESOLUTION}")
            table = np.array(table, dtype=np.int8)
            if table.shape != (1 << resolution, n):
                raise DomainError(f"table shape {table.shape} != {(1 << resolution, n)}")
            if not np.all(np.abs(table) == 1):
                raise DomainError("sign entries must be -1 or +1")
            table.setflags(write=False)
        self.n = n
        self.resolution = resolution
        self._table = table
        self._evaluator = evaluator

    @property
    def is_dense(self) -> bool:
        return self._table is not None

    @property
    def is_trim(self) -> bool:
        return self.resolution == self.n

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise RefusalError("row has no dense table; evaluate atoms with signs()")
        return self._table

    def signs(self, atom: int) -> tuple[int, ...]:
        if atom < 0 or atom >> self.resolution:
            raise DomainError(f"atom {atom} outside [0, 2**{self.resolution})")
        if self._table is not None:
            return tuple(int(v) for v in self._table[atom])
        return tuple(self._evaluator(atom))

    def coordinate(self, i: int) -> np.ndarray:
        """Coordinate ``i`` (1-based) over all atoms."""
        if not 1 <= i <= self.n:
            raise DomainError(f"coordinate {i} outside 1..{self.n}")
        return self.table[:, i - 1]

    def codes(self) -> np.ndarray:
        """Each atom's sign pattern read back as an ``n``-bit integer, ``+1`` meaning a set bit."""
        weights = np.left_shift(np.int64(1), np.arange(self.n - 1, -1, -1, dtype=np.int64))
        return (self.table > 0).astype(np.int64) @ weights

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RademacherRow):
            return NotImplemented
        return (
            self.n == other.n
            and self.resolution == other.resolution
            and np.array_equal(self.table, other.table)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        kind = "dense" if self.is_dense else "pointwise"
        return f"RademacherRow(n={self.n}, resolution={self.resolution}, {kind})"


def _signs_of_values(values: np.ndarray, n: int) -> np.ndarray:
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return (((values[:, None] >> shifts) & 1) * 2 - 1).astype(np.int8)


def row_from_permutation(pi: PermutationTable, *, dense: bool | None = None) -> RademacherRow:
    """The trim row whose atom ``k`` carries the sign form of ``pi(k)``.

    Dense tables and rule tables up to ``n = 12`` give dense rows and are
    checked for admissibility.  Larger rule tables give a pointwise row.
    """
    n = pi.n
    if dense is None:
        dense = pi.is_dense or n <= _DENSE_RULE_LEVEL
    if not dense:
        if pi.is_dense:
            raise DomainError("a dense permutation always gives a dense row")
        return RademacherRow(n, evaluator=lambda k: sign_vector(n, pi(k)))
    if n > MAX_DENSE_RESOLUTION:
        raise RefusalError(f"dense rows are capped at resolution {MAX_DENSE_RESOLUTION}")
    table = pi.dense()
    if not is_admissible(table):
        raise NotAdmissibleError(f"permutation at n={n} is not admissible")
    values = np.fromiter(table.values, dtype=np.int64, count=1 << n)
    return RademacherRow(n, table=_signs_of_values(values, n))


def permutation_from_row(row: RademacherRow) -> PermutationTable:
    """Read each atom's sign pattern back as an integer; must be a bijection."""
    if not row.is_trim:
        raise DomainError(f"row at resolution {row.resolution} is not trim")
    codes = row.codes()
    seen = np.full(1 << row.n, -1, dtype=np.int64)
    for atom, code in enumerate(codes.tolist()):
        if seen[code] >= 0:
            pattern = row.signs(atom)
            raise NotAdmissibleError(
                f"atoms {int(seen[code])} and {atom} share the sign pattern {pattern}; "
                f"that pattern would carry mass 2**-{row.n - 1}"
            )
        seen[code] = atom
    return PermutationTable(row.n, tuple(codes.tolist()))


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class RowReport:
    """Outcome of :func:`verify_row`; each list names the offending atoms, coordinates or patterns."""

    n: int
    resolution: int
    sum_violations: list[int] = field(default_factory=list)
    balance_violations: list[int] = field(default_factory=list)
    independence_violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def sums_ok(self) -> bool:
        return not self.sum_violations

    @property
    def balanced(self) -> bool:
        return not self.balance_violations

    @property
    def independent(self) -> bool:
        return not self.independence_violations

    @property
    def ok(self) -> bool:
        return self.sums_ok and self.balanced and self.independent

    def __bool__(self) -> bool:
        return self.ok


def _quantile_targets(n: int) -> np.ndarray:
    k = np.arange(1 << n, dtype=np.int64)
    steps = np.searchsorted(np.array(sbc_row(n), dtype=np.int64), k, side="right") - 1
    return -n + 2 * steps


def verify_row(row: RademacherRow) -> RowReport:
    """Check the sum, balance and independence properties of a dense row.

    * every atom's coordinates sum to the quantile walk at its resolution-``n`` ancestor;
    * every coordinate is ``+1`` on exactly half the atoms;
    * every sign pattern covers the same number of atoms, ``2**(resolution - n)``.
    """
    table = row.table
    n, r = row.n, row.resolution
    ancestors = np.arange(1 << r, dtype=np.int64) >> (r - n)
    target = _quantile_targets(n)[ancestors]
    sums = table.sum(axis=1, dtype=np.int64)
    sum_bad = np.flatnonzero(sums != target).tolist()

    plus = (table > 0).sum(axis=0)
    balance_bad = [i + 1 for i in np.flatnonzero(plus != (1 << (r - 1))).tolist()]

    counts = np.bincount(row.codes(), minlength=1 << n)
    expected = 1 << (r - n)
    independence_bad = [
        tuple(int(s) for s in sign_vector(n, int(code))) for code in np.flatnonzero(counts != expected)
    ]
    return RowReport(n, r, sum_bad, balance_bad, independence_bad)


# ---------------------------------------------------------------------------
# a non-trim row of resolution n + 1


@dataclass(frozen=True)
class SwapWitness:
    """Coordinates ``i1 != i2`` (1-based) and atoms ``k1 < k2`` for the half-interval swap."""

    i1: int
    i2: int
    k1: int
    k2: int

    def __iter__(self):
        return iter((self.i1, self.i2, self.k1, self.k2))


def _witness_holds(table: np.ndarray, i1: int, i2: int, k1: int, k2: int) -> bool:
    a, b = table[k1], table[k2]
    c1, c2 = i1 - 1, i2 - 1
    if (a[c1], b[c1], a[c2], b[c2]) != (-1, 1, 1, -1):
        return False
    rest = np.ones(len(a), dtype=bool)
    rest[[c1, c2]] = False
    return bool(np.array_equal(a[rest], b[rest]))


def find_swap_witness(row: RademacherRow) -> SwapWitness:
    """The lexicographically first ``(i1, i2, k1, k2)`` admitting the swap.

    Coordinate ``i1`` reads ``(-1, +1)`` and ``i2`` reads ``(+1, -1)`` across
    ``(k1, k2)``, and the two atoms agree on every other coordinate.  The
    agreement is what keeps every sign pattern at equal mass after the swap.
    """
    if not row.is_trim:
        raise DomainError("find_swap_witness needs a trim row")
    n = row.n
    if n < 2:
        raise DomainError("a swap needs at least two coordinates")
    codes = row.codes().tolist()
    atoms_by_code: dict[int, list[int]] = {}
    for atom, code in enumerate(codes):
        atoms_by_code.setdefault(code, []).append(atom)
    for i1 in range(1, n + 1):
        m1 = 1 << (n - i1)
        for i2 in range(1, n + 1):
            if i2 == i1:
                continue
            m2 = 1 << (n - i2)
            for k1, code in enumerate(codes):
                if code & m1 or not code & m2:
                    continue
                partners = [k for k in atoms_by_code.get(code ^ m1 ^ m2, ()) if k > k1]
                if partners:
                    return SwapWitness(i1, i2, k1, partners[0])
    raise DomainError(f"no swap witness exists in this row (n={n})")


def build_nontrim(row: RademacherRow, witness: SwapWitness | tuple[int, int, int, int]) -> RademacherRow:
    """Refine ``row`` to resolution ``n + 1`` and swap the right halves of ``k1`` and ``k2``.

    Every child copies its parent except that coordinates ``(i1, i2)`` become
    ``(+1, -1)`` on ``2*k1 + 1`` and ``(-1, +1)`` on ``2*k2 + 1``.  Pair sums
    and products are unchanged, and coordinate ``i1`` now differs between
    the two children of ``k1``.
    """
    i1, i2, k1, k2 = witness
    n = row.n
    if not row.is_trim:
        raise DomainError("build_nontrim needs a trim row")
    if not (1 <= i1 <= n and 1 <= i2 <= n and i1 != i2 and 0 <= k1 < k2 < (1 << n)):
        raise DomainError(f"malformed witness {tuple(witness)}")
    if not _witness_holds(row.table, i1, i2, k1, k2):
        raise DomainError(f"witness {tuple(witness)} does not satisfy the swap conditions")
    refined = np.repeat(row.table, 2, axis=0)
    c1, c2 = i1 - 1, i2 - 1
    refined[2 * k1 + 1, [c1, c2]] = (1, -1)
    refined[2 * k2 + 1, [c1, c2]] = (-1, 1)
    return RademacherRow(n, n + 1, table=refined)


# ---------------------------------------------------------------------------
# non-persistence


def lift(row: RademacherRow) -> RademacherRow:
    """The same functions viewed at one finer resolution: both children copy the parent."""
    if row.is_dense:
        return RademacherRow(row.n, row.resolution + 1, table=np.repeat(row.table, 2, axis=0))
    return RademacherRow(row.n, row.resolution + 1, evaluator=lambda a: row.signs(a >> 1))


def row_nonpersistence(row_n: RademacherRow, row_next: RademacherRow) -> tuple[int, int]:
    """First ``(i, atom)`` with ``1 <= i <= n`` where the size-``n + 1`` row departs from the size-``n`` row."""
    n = row_n.n
    if not (row_n.is_trim and row_next.is_trim and row_next.n == n + 1):
        raise DomainError("expected trim rows of sizes n and n + 1")
    old = lift(row_n).table
    new = row_next.table[:, :n]
    for c in range(n):
        diff = np.flatnonzero(old[:, c] != new[:, c])
        if diff.size:
            return c + 1, int(diff[0])
    raise InvariantError(f"row of size {n + 1} extends the row of size {n} on every coordinate")
