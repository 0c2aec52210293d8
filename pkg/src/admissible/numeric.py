"""Exact integer primitives for the dyadic random walk and its quantile.

Everything here works on Python integers of unbounded size.  An atom of
level ``n`` is an index ``0 <= k < 2**n`` naming the dyadic interval
``[k / 2**n, (k + 1) / 2**n)``; its bit vector is the big-endian ``n``-bit
expansion of ``k`` (first entry most significant).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache

import gmpy2

from .exceptions import DomainError

__all__ = [
    "DyadicIndex",
    "binomial",
    "binomial_row",
    "pascal_row",
    "sbc",
    "sbc_row",
    "weight",
    "istep",
    "walk_value",
    "quantile_value",
    "bits",
    "from_bits",
    "signs",
    "count_weight_upto",
    "weight_distribution",
]


def _check_level(n: int) -> None:
    if n < 1:
        raise DomainError(f"level n must be positive, got {n}")


def _check_atom(n: int, k: int) -> None:
    _check_level(n)
    if k < 0 or k >> n:
        raise DomainError(f"atom index k={k} outside [0, 2**{n})")


@dataclass(frozen=True)
class DyadicIndex:
    """The level-``n`` dyadic interval with index ``k``."""

    n: int
    k: int

    def __post_init__(self) -> None:
        _check_atom(self.n, self.k)

    @property
    def left(self) -> tuple[int, int]:
        """Left endpoint as the exact fraction ``(k, 2**n)``."""
        return self.k, 1 << self.n

    def children(self) -> tuple["DyadicIndex", "DyadicIndex"]:
        return DyadicIndex(self.n + 1, 2 * self.k), DyadicIndex(self.n + 1, 2 * self.k + 1)

    def parent(self) -> "DyadicIndex":
        if self.n == 1:
            raise DomainError("level-1 intervals have no dyadic parent at a positive level")
        return DyadicIndex(self.n - 1, self.k >> 1)


# ---------------------------------------------------------------------------
# binomial coefficients and their prefix sums


def binomial(n: int, i: int) -> int:
    """Exact ``C(n, i)``."""
    if n < 0 or i < 0 or i > n:
        raise DomainError(f"binomial({n}, {i}) requires 0 <= i <= n")
    return int(gmpy2.comb(n, i))


def pascal_row(n: int) -> list[int]:
    """Row ``n`` of Pascal's triangle built by repeated additions only.

    Uses O(n**2) additions of integers below ``2**n``.  Kept as the
    addition-only reference; :func:`binomial_row` is the fast path.
    """
    if n < 0:
        raise DomainError(f"pascal_row requires n >= 0, got {n}")
    row = [1]
    for _ in range(n):
        row = [1] + [row[t] + row[t + 1] for t in range(len(row) - 1)] + [1]
    return row


@lru_cache(maxsize=64)
def binomial_row(n: int) -> tuple[int, ...]:
    """``(C(n, 0), ..., C(n, n))`` by the multiplicative recurrence."""
    if n < 0:
        raise DomainError(f"binomial_row requires n >= 0, got {n}")
    row = [1] * (n + 1)
    c = gmpy2.mpz(1)
    for i in range(n):
        c = c * (n - i) // (i + 1)
        row[i + 1] = int(c)
    return tuple(row)


@lru_cache(maxsize=64)
def sbc_row(n: int) -> tuple[int, ...]:
    """``(SBC(n, 0), ..., SBC(n, n + 1))``; the last entry is ``2**n``."""
    _check_level(n)
    out = [0]
    acc = 0
    for c in binomial_row(n):
        acc += c
        out.append(acc)
    return tuple(out)


def sbc(n: int, i: int) -> int:
    """Sum of binomial coefficients ``C(n, 0) + ... + C(n, i - 1)``."""
    _check_level(n)
    if i < 0 or i > n + 1:
        raise DomainError(f"sbc({n}, {i}) requires 0 <= i <= n + 1")
    return sbc_row(n)[i]


# ---------------------------------------------------------------------------
# weight, step and the two walks


def weight(k: int) -> int:
    """Hamming weight of ``k``."""
    if k < 0:
        raise DomainError(f"weight of a negative integer ({k}) is undefined")
    return bin(k).count("1")


def istep(n: int, k: int) -> int:
    """The unique ``i`` with ``SBC(n, i) <= k < SBC(n, i + 1)``.

    Binary search over the cached SBC row.
    """
    _check_atom(n, k)
    return bisect.bisect_right(sbc_row(n), k) - 1


def walk_value(n: int, k: int) -> int:
    """Value of the walk on atom ``k``: ``-n + 2 * weight(k)``."""
    _check_atom(n, k)
    return -n + 2 * weight(k)


def quantile_value(n: int, k: int) -> int:
    """Value of the quantile walk on atom ``k``: ``-n + 2 * istep(n, k)``."""
    return -n + 2 * istep(n, k)


def bits(n: int, k: int) -> tuple[int, ...]:
    """Big-endian ``n``-bit expansion of ``k``."""
    _check_atom(n, k)
    return tuple(int(ch) for ch in format(k, f"0{n}b"))


def from_bits(eps) -> int:
    """Inverse of :func:`bits`: ``sum(eps[i] * 2**(n - 1 - i))`` over 0-based ``i``."""
    k = 0
    for e in eps:
        if e not in (0, 1):
            raise DomainError(f"bit vector entries must be 0 or 1, got {e!r}")
        k = (k << 1) | e
    return k


def signs(n: int, k: int) -> tuple[int, ...]:
    """Sign form of :func:`bits`: entry ``+1`` where the bit is 1, ``-1`` where it is 0."""
    return tuple(2 * e - 1 for e in bits(n, k))


# ---------------------------------------------------------------------------
# counting kernels


def count_weight_upto(j: int, b: int) -> int:
    """Number of ``x`` with ``1 <= x <= b`` and ``weight(x) == j``.

    Walks the bits of ``b`` from the top, summing ``C(a, r)`` at every set
    bit, where ``a`` is the number of lower positions and ``r`` the number of
    ones still owed.  The binomial is carried along the walk with one small
    multiplication and one exact division per position.
    """
    if b <= 0 or j <= 0:
        return 0
    digits = format(b, "b")
    a = len(digits) - 1
    if j > a + 1:
        return 0
    r = j
    c = gmpy2.comb(a, r)
    total = gmpy2.mpz(0)
    for ch in digits:
        if ch == "1":
            total += c
            if r == 0:
                return int(total)
            if a:
                c = c * r // a
            r -= 1
        elif a:
            c = c * (a - r) // a
        a -= 1
    return int(total) + (r == 0)


def weight_distribution(b: int, n: int) -> list[int]:
    """``[count_weight_upto(j, b) for j in range(n + 1)]`` in one pass.

    The per-bit binomial rows are packed into a single integer (Kronecker
    substitution with ``y = 2**W``) and combined by divide and conquer, so the
    cost is a logarithmic number of large multiplications instead of ``n``
    separate walks.
    """
    if n < 0:
        raise DomainError(f"weight_distribution requires n >= 0, got {n}")
    if b <= 0:
        return [0] * (n + 1)
    digits = format(b, "b")
    length = len(digits)
    if length > n:
        raise DomainError(f"b={b} has more than n={n} bits")
    width = (length + 9) // 8 * 8
    base = (gmpy2.mpz(1) << width) + 1
    powers: dict[int, gmpy2.mpz] = {}

    def binom_poly(e):
        p = powers.get(e)
        if p is None:
            p = powers[e] = base**e
        return p

    def combine(lo, hi):
        # digits[lo:hi] as (sum_s y**(s-1) * (1+y)**(pos_s - 1), ones), pos counted from the segment bottom
        if hi - lo == 1:
            return (gmpy2.mpz(1), 1) if digits[lo] == "1" else (gmpy2.mpz(0), 0)
        mid = (lo + hi) // 2
        top, top_ones = combine(lo, mid)
        low, low_ones = combine(mid, hi)
        poly = top * binom_poly(hi - mid) if top else top
        if low:
            poly += low << (width * top_ones)
        return poly, top_ones + low_ones

    poly, ones = combine(0, length)
    poly += gmpy2.mpz(1) << (width * ones)
    step = width // 8
    raw = int(poly).to_bytes((n + 2) * step, "little")
    out = [int.from_bytes(raw[t * step:(t + 1) * step], "little") for t in range(n + 1)]
    out[0] -= 1  # x = 0 is not counted
    return out
