"""Integer partitions and their combinatorial statistics.

Partitions index every sum in the vertex engine.  They are immutable,
hashable, and compare structurally, so they are safe to use as cache keys
and to share between workers.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator


class Partition:
    """A weakly decreasing sequence of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError("partition parts must be positive: %r" % (parts,))
            if i > 0 and parts[i - 1] < p:
                raise ValueError("parts must be weakly decreasing: %r" % (parts,))
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    def __reduce__(self):
        return (Partition, (self.parts,))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return "Partition(%s)" % (list(self.parts),)

    def __bool__(self):
        return bool(self.parts)

    @property
    def size(self) -> int:
        """Total number of boxes, |mu|."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of nonzero parts, l(mu)."""
        return len(self.parts)

    def kappa(self) -> int:
        """The framing statistic sum_i mu_i*(mu_i - 2i + 1); always even."""
        return sum(p * (p - 2 * i - 1) for i, p in enumerate(self.parts))

    def n_stat(self) -> int:
        """The weighted statistic sum_i (i-1)*mu_i (1-based i)."""
        return sum(i * p for i, p in enumerate(self.parts))

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram."""
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def hooks(self) -> list:
        """Hook lengths of all boxes, as a list of length |mu|."""
        conj = self.conjugate().parts
        out = []
        for i, p in enumerate(self.parts):
            for j in range(p):
                arm = p - j - 1
                leg = conj[j] - i - 1
                out.append(arm + leg + 1)
        return out

    def to_json(self) -> list:
        return list(self.parts)

    @classmethod
    def from_json(cls, data) -> "Partition":
        return cls(data)


EMPTY = Partition()


def partitions_of(n: int) -> Iterator[Partition]:
    """Yield all partitions of n in reverse-lexicographic order.

    The order is deterministic: larger first parts come first, so the
    output is stable across runs and usable in cache keys.
    """
    if n < 0:
        return
    yield from (Partition(p) for p in _parts_rec(n, n))


def _parts_rec(n, bound):
    if n == 0:
        yield ()
        return
    for first in range(min(n, bound), 0, -1):
        for rest in _parts_rec(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list:
    """All partitions of n as a list, reverse-lexicographic."""
    return list(partitions_of(n))


def partitions_up_to(n: int) -> Iterator[Partition]:
    """All partitions of 0, 1, ..., n, each block in reverse-lex order."""
    for m in range(n + 1):
        yield from partitions_of(m)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via the Euler pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        if g1 <= n:
            total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total
