"""Admissible permutations of ``{0, ..., 2**n - 1}``.

A permutation ``pi`` is admissible when ``weight(pi(k)) == istep(n, k)`` for
every atom ``k``: it carries each step class onto the weight class of the
same index.  Three explicit polynomial-time rules are provided:

* :func:`f` maps every step class onto its weight class in increasing order;
* :func:`g` fixes every atom whose weight equals its step and maps what is
  left in increasing order;
* :func:`h` has the fixed points of :func:`g`, then pairs as many remaining
  atoms as possible into 2-cycles, and maps the rest in increasing order.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import cached_property

from .exceptions import DomainError, InvariantError, NotAdmissibleError, RefusalError
from .numeric import binomial_row, istep, sbc_row, weight
from .tame import (
    TameRelation,
    card,
    enumerate_rel,
    gamma_total,
    member,
    weight_class_rank,
)

__all__ = [
    "RULES",
    "PermutationTable",
    "SigmaSystem",
    "f",
    "inv_f",
    "g",
    "h",
    "natural_encoding",
    "dense_table",
    "is_admissible",
    "admissible_count",
    "enumerate_admissible",
    "sigma_decomposition",
    "from_sigma",
    "verify_lower_bound_identity",
    "nonpersistence_witness",
    "fixed_points",
    "two_cycles",
]

MAX_ENUMERATION_LEVEL = 4
MAX_DENSE_LEVEL = 20


def _check(n: int, k: int) -> None:
    if n < 1:
        raise DomainError(f"level n must be positive, got {n}")
    if k < 0 or k >> n:
        raise DomainError(f"argument {k} outside [0, 2**{n})")


def f(n: int, k: int) -> int:
    """Order-preserving admissible permutation: rank in the step class becomes rank in the weight class."""
    _check(n, k)
    if k == 0 or k == (1 << n) - 1:
        return k
    i = istep(n, k)
    return enumerate_rel(TameRelation("B", n, i), k + 1 - sbc_row(n)[i])


def inv_f(n: int, m: int) -> int:
    """Inverse of :func:`f`: ``SBC(n, weight(m)) + rank of m among its weight class - 1``."""
    _check(n, m)
    if m == 0:
        return 0
    j = weight(m)
    return sbc_row(n)[j] + weight_class_rank(n, j, m) - 1


def g(n: int, k: int) -> int:
    """Admissible permutation fixing every atom with ``weight == istep``."""
    _check(n, k)
    i = istep(n, k)
    if weight(k) == i:
        return k
    return enumerate_rel(TameRelation("B1", n, i), card(TameRelation("A1", n, i), k))


def h(n: int, k: int) -> int:
    """Admissible permutation with the fixed points of :func:`g` and a maximal pairing into 2-cycles."""
    _check(n, k)
    i, j = istep(n, k), weight(k)
    if i == j:
        return k
    paired = TameRelation("C1bar", n, i, j)
    if member(paired, k):
        return enumerate_rel(TameRelation("C1bar", n, j, i), card(paired, k))
    return enumerate_rel(TameRelation("B2", n, i), card(TameRelation("A2", n, i), k))


RULES: dict[str, Callable[[int, int], int]] = {"F": f, "G": g, "H": h}


def natural_encoding(rule: Callable[[int, int], int]) -> Callable[[int, int], int]:
    """Extend a rule to all of N x N: ``(0, 0) -> 0`` and ``k >= 2**n -> 2**n``."""

    def encoded(n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise DomainError("natural encoding is defined on non-negative arguments")
        if k >> n:
            return 1 << n
        if n == 0:
            return 0
        return rule(n, k)

    encoded.__name__ = f"natural_{getattr(rule, '__name__', 'rule')}"
    return encoded


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True, eq=False)
class PermutationTable:
    """A permutation of ``{0, ..., 2**n - 1}``, dense or given by a named rule.

    Dense tables are checked for bijectivity on construction.  Rule-backed
    tables evaluate lazily and can be densified for ``n <= 20``.
    """

    n: int
    mapping: tuple[int, ...] | None = None
    rule: str | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"level n must be positive, got {self.n}")
        if (self.mapping is None) == (self.rule is None):
            raise DomainError("give exactly one of mapping or rule")
        if self.rule is not None and self.rule not in RULES:
            raise DomainError(f"unknown rule {self.rule!r}; expected one of {sorted(RULES)}")
        if self.mapping is not None:
            object.__setattr__(self, "mapping", tuple(self.mapping))
            size = 1 << self.n
            if len(self.mapping) != size or sorted(self.mapping) != list(range(size)):
                raise NotAdmissibleError(f"mapping is not a permutation of range(2**{self.n})")

    @classmethod
    def from_rule(cls, rule: str, n: int) -> "PermutationTable":
        return cls(n, rule=rule)

    @property
    def is_dense(self) -> bool:
        return self.mapping is not None

    def __call__(self, k: int) -> int:
        if self.mapping is not None:
            _check(self.n, k)
            return self.mapping[k]
        return RULES[self.rule](self.n, k)

    def __getitem__(self, k: int) -> int:
        return self(k)

    def __len__(self) -> int:
        return 1 << self.n

    def __iter__(self) -> Iterator[int]:
        return (self(k) for k in range(1 << self.n))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationTable):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.rule is not None and self.rule == other.rule:
            return True
        return self.values == other.values

    def __hash__(self) -> int:
        return hash((self.n, self.values))

    @cached_property
    def values(self) -> tuple[int, ...]:
        if self.mapping is not None:
            return self.mapping
        if self.n > MAX_DENSE_LEVEL:
            raise RefusalError(f"refusing to densify a rule table at n={self.n} > {MAX_DENSE_LEVEL}")
        return tuple(self(k) for k in range(1 << self.n))

    def dense(self) -> "PermutationTable":
        return self if self.mapping is not None else PermutationTable(self.n, self.values)

    def inverse(self) -> "PermutationTable":
        inv = [0] * (1 << self.n)
        for k, m in enumerate(self.values):
            inv[m] = k
        return PermutationTable(self.n, tuple(inv))

    def __repr__(self) -> str:
        if self.rule is not None:
            return f"PermutationTable(n={self.n}, rule={self.rule!r})"
        return f"PermutationTable(n={self.n}, mapping={self.mapping!r})"


def dense_table(rule: str, n: int) -> PermutationTable:
    return PermutationTable.from_rule(rule, n).dense()


def is_admissible(pi: PermutationTable) -> bool:
    """True iff ``weight(pi(k)) == istep(n, k)`` for every atom."""
    table = pi.dense()
    n = table.n
    row = sbc_row(n)
    for i in range(n + 1):
        for k in range(row[i], row[i + 1]):
            if weight(table.mapping[k]) != i:
                return False
    return True


def _require_admissible(pi: PermutationTable) -> PermutationTable:
    table = pi.dense()
    if not is_admissible(table):
        raise NotAdmissibleError(f"permutation at n={table.n} is not admissible")
    return table


def admissible_count(n: int) -> int:
    """Product of ``C(n, i)!`` over ``i``: the number of admissible permutations."""
    if n < 1:
        raise DomainError(f"level n must be positive, got {n}")
    return math.prod(math.factorial(c) for c in binomial_row(n))


# ---------------------------------------------------------------------------
# block permutations


@dataclass(frozen=True)
class SigmaSystem:
    """One permutation of ``{1, ..., C(n, i)}`` per class index ``i``.

    ``blocks[i][s - 1]`` is the image of ``s``.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        sizes = binomial_row(self.n)
        if len(self.blocks) != self.n + 1:
            raise DomainError(f"expected {self.n + 1} blocks, got {len(self.blocks)}")
        for i, (block, c) in enumerate(zip(self.blocks, sizes)):
            if sorted(block) != list(range(1, c + 1)):
                raise DomainError(f"block {i} is not a permutation of 1..{c}")

    @classmethod
    def identity(cls, n: int) -> "SigmaSystem":
        return cls(n, tuple(tuple(range(1, c + 1)) for c in binomial_row(n)))

    def is_identity(self) -> bool:
        return all(block == tuple(range(1, len(block) + 1)) for block in self.blocks)


def _weight_classes(n: int) -> list[list[int]]:
    classes: list[list[int]] = [[] for _ in range(n + 1)]
    for m in range(1 << n):
        classes[weight(m)].append(m)
    return classes


def sigma_decomposition(pi: PermutationTable) -> SigmaSystem:
    """Block permutations ``s -> rank of pi(a_s) in its weight class``, with ``a_s`` the ``s``-th atom of step class ``i``."""
    table = _require_admissible(pi)
    n = table.n
    row = sbc_row(n)
    blocks = []
    for i in range(n + 1):
        blocks.append(tuple(weight_class_rank(n, i, table.mapping[k]) for k in range(row[i], row[i + 1])))
    return SigmaSystem(n, tuple(blocks))


def from_sigma(system: SigmaSystem) -> PermutationTable:
    """The unique admissible permutation whose block permutations are ``system``."""
    n = system.n
    row = sbc_row(n)
    classes = _weight_classes(n)
    mapping = [0] * (1 << n)
    for i, block in enumerate(system.blocks):
        for s, t in enumerate(block):
            mapping[row[i] + s] = classes[i][t - 1]
    return PermutationTable(n, tuple(mapping))


def enumerate_admissible(n: int) -> Iterator[PermutationTable]:
    """Every admissible permutation exactly once.

    Block permutations are taken in lexicographic order, block ``n`` varying
    fastest, so the stream order is deterministic.
    """
    if n < 1:
        raise DomainError(f"level n must be positive, got {n}")
    if n > MAX_ENUMERATION_LEVEL:
        raise RefusalError(f"refusing to enumerate admissible permutations at n={n} > {MAX_ENUMERATION_LEVEL}")
    row = sbc_row(n)
    classes = _weight_classes(n)
    size = 1 << n
    choices = [itertools.permutations(classes[i]) for i in range(n + 1)]
    for images in itertools.product(*choices):
        mapping = [0] * size
        for i, image in enumerate(images):
            mapping[row[i]:row[i + 1]] = image
        yield PermutationTable(n, tuple(mapping))


# ---------------------------------------------------------------------------
# orbit structure


def fixed_points(pi: PermutationTable) -> frozenset[int]:
    return frozenset(k for k, m in enumerate(pi.values) if k == m)


def two_cycles(pi: PermutationTable) -> list[tuple[int, int]]:
    vals = pi.values
    return [(k, m) for k, m in enumerate(vals) if k < m and vals[m] == k]


# ---------------------------------------------------------------------------
# identities and non-persistence


def _as_rule(rule) -> tuple[str | None, Callable[[int, int], int]]:
    if isinstance(rule, str):
        if rule not in RULES:
            raise DomainError(f"unknown rule {rule!r}")
        return rule, RULES[rule]
    if isinstance(rule, PermutationTable):
        return rule.rule, lambda n, k: rule(k)
    return None, rule


def verify_lower_bound_identity(rule, n: int) -> bool:
    """Check ``2**n == 1 + sum(pi(n, i) for i in 1..n)`` and the rule-specific shortcut.

    ``rule`` is ``"F"``, ``"G"``, ``"H"``, a :class:`PermutationTable` at level
    ``n`` or any callable ``(n, k) -> pi_n(k)``.  For ``F`` the identity
    ``2**n == 2 * F(n, n)`` is also checked; for ``G``,
    ``2**n == 2 * max(G(n, n), G(n, n - 1))``.
    """
    if n < 1:
        raise DomainError(f"level n must be positive, got {n}")
    name, fn = _as_rule(rule)
    if isinstance(rule, PermutationTable) and rule.n != n:
        raise DomainError(f"table is at level {rule.n}, not {n}")
    power = 1 << n
    if 1 + sum(fn(n, i) for i in range(1, n + 1)) != power:
        return False
    if name == "F" and 2 * fn(n, n) != power:
        return False
    if name == "G" and 2 * max(fn(n, n), fn(n, n - 1)) != power:
        return False
    return True


def nonpersistence_witness(pi_n: PermutationTable, pi_next: PermutationTable) -> int:
    """Some ``k < 2**n`` with ``pi_next(k) != pi_n(k)``.

    Atoms whose step drops when the level increases are tried first: their
    images must have different weights.  A linear scan is the fallback.
    """
    n = pi_n.n
    if pi_next.n != n + 1:
        raise DomainError(f"expected levels n and n + 1, got {n} and {pi_next.n}")
    drops = (k for k in range(1 << n) if istep(n + 1, k) < istep(n, k))
    for k in itertools.chain(drops, range(1 << n)):
        if pi_next(k) != pi_n(k):
            return k
    raise InvariantError(f"permutation at level {n + 1} extends the one at level {n}")

