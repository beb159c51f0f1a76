"""Integer partitions, multipartitions and the invariants attached to them."""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

from .exactalg import IntPoly, RationalFunction

__all__ = [
    "Partition",
    "MultiPartition",
    "pairing",
    "pairing_min_form",
    "centralizer_order",
    "centralizer_order_poly",
    "gl_order_poly",
    "enumerate_partitions",
    "partitions_up_to",
    "enumerate_multipartitions",
    "count_multipartitions",
    "partition_count",
]


class Partition:
    """A weakly decreasing tuple of positive integers.

    >>> lam = Partition([2, 1, 1])
    >>> lam.size, lam.conjugate(), lam.multiplicities()
    (4, Partition((3, 1)), {2: 1, 1: 2})
    """

    __slots__ = ("parts", "_conj", "_mult")

    def __init__(self, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        self.parts = parts
        self._conj = None
        self._mult = None

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    @property
    def length(self) -> int:
        """Number of parts."""
        return len(self.parts)

    def multiplicities(self) -> dict:
        """Map k -> m_k, the number of parts equal to k."""
        if self._mult is None:
            self._mult = dict(Counter(self.parts))
        return self._mult

    def conjugate(self) -> "Partition":
        if self._conj is None:
            width = self.parts[0] if self.parts else 0
            self._conj = Partition(
                tuple(sum(1 for p in self.parts if p > i) for i in range(width))
            )
        return self._conj

    def __iter__(self):
        return iter(self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __lt__(self, other):
        return self.parts < other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition({self.parts})"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"


MultiPartition = Tuple[Partition, ...]


def pairing(lam: Partition, mu: Partition) -> int:
    """<lam, mu> computed as the dot product of the conjugate partitions."""
    a = lam.conjugate().parts
    b = mu.conjugate().parts
    return sum(x * y for x, y in zip(a, b))


def pairing_min_form(lam: Partition, mu: Partition) -> int:
    """<lam, mu> = sum_{i,j} min(i, j) m_i(lam) m_j(mu), summed literally."""
    ml = lam.multiplicities()
    mm = mu.multiplicities()
    return sum(min(i, j) * a * b for i, a in ml.items() for j, b in mm.items())


@lru_cache(maxsize=None)
def gl_order_poly(n: int) -> IntPoly:
    """|GL_n(F_q)| = prod_{j=0}^{n-1} (q^n - q^j) as a polynomial in q."""
    out = IntPoly([1])
    qn = IntPoly.monomial(n)
    for j in range(n):
        out = out * (qn - IntPoly.monomial(j))
    return out


@lru_cache(maxsize=None)
def _centralizer_cached(parts: Tuple[int, ...]) -> IntPoly:
    lam = Partition(parts)
    # q^<lam,lam> prod_k prod_{j<=m_k} (1 - q^-j)
    #   = q^(<lam,lam> - sum_k m_k(m_k+1)/2) prod_k prod_{j<=m_k} (q^j - 1)
    shift = pairing(lam, lam)
    out = IntPoly([1])
    for m in lam.multiplicities().values():
        shift -= m * (m + 1) // 2
        for j in range(1, m + 1):
            out = out * (IntPoly.monomial(j) - 1)
    # shift >= 0 always: <lam,lam> >= sum_k m_k^2 >= sum_k m_k(m_k+1)/2
    return out.shift(shift)


def centralizer_order_poly(lam: Partition) -> IntPoly:
    """Order of the centralizer in GL_n(F_q) of a nilpotent of Jordan type ``lam``."""
    return _centralizer_cached(lam.parts)


def centralizer_order(lam: Partition) -> RationalFunction:
    """``q^<lam,lam> prod_k prod_{j=1}^{m_k} (1 - q^-j)`` as a rational function.

    The negative powers clear into a genuine polynomial; it is returned as a
    ``RationalFunction`` with denominator 1.
    """
    return RationalFunction(centralizer_order_poly(lam))


def _partitions_rev_lex(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_rev_lex(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> Tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions_rev_lex(n, n))


def enumerate_partitions(n: int) -> list:
    """All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1^n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions_cached(n))


def partition_count(n: int) -> int:
    return len(_partitions_cached(n))


def partitions_up_to(n: int) -> list:
    """Partitions of every size 0..n, grouped by size."""
    out = []
    for k in range(n + 1):
        out.extend(_partitions_cached(k))
    return out


def enumerate_multipartitions(bound: Sequence[int]) -> Iterator[MultiPartition]:
    """Lazily yield every tuple of partitions with |lam^i| <= bound[i]."""
    if any(b < 0 for b in bound):
        raise ValueError("bound must be nonnegative")
    per_vertex = [partitions_up_to(b) for b in bound]
    return itertools.product(*per_vertex)


def count_multipartitions(bound: Sequence[int]) -> int:
    out = 1
    for b in bound:
        out *= sum(partition_count(k) for k in range(b + 1))
    return out
