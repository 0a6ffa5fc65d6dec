"""Partitions, colored Young diagrams, fixed-point data and Dec-chains.

Partitions are plain tuples of positive, weakly decreasing integers. Boxes
are addressed as ``(l, m)`` with ``l`` the row and ``m`` the column, both
starting at 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .scalars import Key, Scalar, framing_keys, mode_of, zero
from .series import compositions

Partition = tuple[int, ...]


def check_partition(lam: Sequence[int]) -> Partition:
    lam = tuple(lam)
    if any(x <= 0 for x in lam) or any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"not a partition: {lam}")
    return lam


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= m) for m in range(1, lam[0] + 1))


def boxes(lam: Partition) -> Iterator[tuple[int, int]]:
    for l, row in enumerate(lam, start=1):
        for m in range(1, row + 1):
            yield (l, m)


def part(lam: Partition, l: int) -> int:
    """lam_l with the convention that rows past the length are 0."""
    return lam[l - 1] if 1 <= l <= len(lam) else 0


def arm(lam: Partition, box: tuple[int, int]) -> int:
    """A_lam(l, m) = lam_l - m; may be negative when the box lies outside lam."""
    l, m = box
    return part(lam, l) - m


def leg(lam: Partition, box: tuple[int, int]) -> int:
    """L_lam(l, m) = lam'_m - l; may be negative when the box lies outside lam."""
    l, m = box
    return part(conjugate(lam), m) - l


def arm_leg(lam: Partition, mu: Partition, box: tuple[int, int]) -> tuple[int, int]:
    """(A_mu(box), L_lam(box)) for a box of ``lam``."""
    l, m = box
    if not (1 <= l <= len(lam) and 1 <= m <= lam[l - 1]):
        raise ValueError(f"box {box} is outside {lam}")
    return arm(mu, box), leg(lam, box)


def colored_row_count(lam: Partition, N: int, k: int) -> int:
    """Number of boxes in rows congruent to k mod N."""
    return sum(row for l, row in enumerate(lam, start=1) if (l - k) % N == 0)


def leg_colored_count(lam: Partition, N: int, k: int) -> int:
    """Number of boxes whose leg length is congruent to k mod N."""
    return sum(1 for b in boxes(lam) if (leg(lam, b) - k) % N == 0)


@dataclass(frozen=True)
class PartitionTuple:
    """A partition for every framing index ``(i, alpha)``; vertices are 1..N."""

    N: int
    r: tuple[int, ...]
    parts: tuple[Partition, ...]

    def __post_init__(self):
        if len(self.r) != self.N or len(self.parts) != sum(self.r):
            raise ValueError("partition tuple does not match the framing vector")

    def keys(self) -> list[Key]:
        return framing_keys(self.r)

    def items(self) -> list[tuple[Key, Partition]]:
        return list(zip(self.keys(), self.parts))

    def __getitem__(self, key: Key) -> Partition:
        return self.parts[self.keys().index(key)]

    def size(self) -> int:
        return sum(sum(p) for p in self.parts)

    @classmethod
    def empty(cls, N: int, r: Sequence[int]) -> "PartitionTuple":
        return cls(N, tuple(r), tuple(() for _ in range(sum(r))))


def enumerate_tuples(N: int, r: Sequence[int], total_size_bound: int) -> Iterator[PartitionTuple]:
    """Every tuple with total size at most the bound, by size then lexicographically."""
    r = tuple(r)
    slots = sum(r)
    for total in range(total_size_bound + 1):
        if slots == 0:
            if total == 0:
                yield PartitionTuple(N, r, ())
            continue
        for sizes in compositions(total, slots):
            for combo in itertools.product(*(partitions(s) for s in sizes)):
                yield PartitionTuple(N, r, combo)


def box_color(i: int, l: int, N: int, stability: int) -> int:
    """Color in Z/N (representative 0..N-1) of row ``l`` of a diagram at vertex ``i``.

    Stable (-1): i + l - 1. Co-stable (+1): i - l.
    """
    return (i + l - 1) % N if stability < 0 else (i - l) % N


def dimension_vector(fp: PartitionTuple, stability: int) -> tuple[int, ...]:
    """v_j for j = 1..N; color 0 is reported in slot N."""
    v = [0] * fp.N
    for (i, _), lam in fp.items():
        for l, row in enumerate(lam, start=1):
            c = box_color(i, l, fp.N, stability)
            v[(c - 1) % fp.N] += row
    return tuple(v)


def enumerate_fixed_points(N: int, r: Sequence[int], v: Sequence[int], stability: int) -> list[PartitionTuple]:
    """All tuples whose colored box counts equal ``v``."""
    v = tuple(v)
    return [fp for fp in enumerate_tuples(N, r, sum(v)) if fp.size() == sum(v) and dimension_vector(fp, stability) == v]


def t_int(m: int, t: Scalar) -> Scalar:
    """[m]_t = (1 - t^m)/(1 - t) = 1 + t + ... + t^{m-1}."""
    acc = zero(mode_of(t))
    for i in range(m):
        acc = acc + t ** i
    return acc


def t_factorial(m: int, t: Scalar) -> Scalar:
    """[m]_t! = [1]_t [2]_t ... [m]_t, with [0]_t! = 1."""
    if m < 0:
        raise ValueError("t-factorial needs m >= 0")
    acc = t ** 0
    for i in range(1, m + 1):
        acc = acc * t_int(i, t)
    return acc


def t_fact_full(m: int, t: Scalar) -> Scalar:
    """(t; t)_m = (1 - t)(1 - t^2)...(1 - t^m), so [m]_t! = (t; t)_m / (1 - t)^m."""
    if m < 0:
        raise ValueError("t-factorial needs m >= 0")
    acc = t ** 0
    for i in range(1, m + 1):
        acc = acc * (1 - t ** i)
    return acc


def lyk_counterexample(max_size: int, max_N: int) -> tuple | None:
    """First (lam, N, k) with leg count at k differing from row count at k + 1, or None."""
    for n in range(max_size + 1):
        for lam in partitions(n):
            for N in range(1, max_N + 1):
                for k in range(N):
                    if leg_colored_count(lam, N, k) != colored_row_count(lam, N, k + 1):
                        return lam, N, k
    return None


@dataclass(frozen=True)
class DecChain:
    """Disjoint blocks of [n] with decreasing minima, plus the complement."""

    n: int
    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        seen: set = set()
        for b in self.blocks:
            if not b or seen & b or not b <= set(range(1, self.n + 1)):
                raise ValueError("blocks must be disjoint nonempty subsets of [n]")
            seen |= b
        mins = [min(b) for b in self.blocks]
        if any(mins[i] <= mins[i + 1] for i in range(len(mins) - 1)):
            raise ValueError("block minima must decrease")

    @property
    def rest(self) -> frozenset:
        used = frozenset().union(*self.blocks) if self.blocks else frozenset()
        return frozenset(range(1, self.n + 1)) - used

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def tail(self, i: int) -> frozenset:
        """I^infinity together with the blocks after position ``i`` (zero-based)."""
        out = self.rest
        for b in self.blocks[i + 1:]:
            out = out | b
        return out


def _subsets(pool: Sequence[int]) -> Iterator[frozenset]:
    for k in range(1, len(pool) + 1):
        for c in itertools.combinations(pool, k):
            yield frozenset(c)


def enumerate_dec(n: int, j: int) -> list[DecChain]:
    """All chains with ``j`` blocks, in a deterministic order."""
    if j < 1 or j > n:
        return []
    out: list[DecChain] = []

    def extend(blocks: tuple[frozenset, ...], remaining: tuple[int, ...]):
        if len(blocks) == j:
            out.append(DecChain(n, blocks))
            return
        bound = min(blocks[-1]) if blocks else n + 1
        for b in _subsets(remaining):
            if min(b) < bound:
                extend(blocks + (b,), tuple(x for x in remaining if x not in b))

    extend((), tuple(range(1, n + 1)))
    return out


def s_stat(I: frozenset | set, J: frozenset | set) -> int:
    """Number of pairs (l, l') in I x J with l < l'."""
    if set(I) & set(J):
        raise ValueError("s-statistic needs disjoint sets")
    return sum(1 for a in I for b in J if a < b)
