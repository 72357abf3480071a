"""
Partitions, compositions and vector partitions, with exhaustive iterators

Every iterator is lazy and deterministic:
- partitions come in reverse lexicographic order, e.g. (5), (4,1), (3,2), ...
- unimodal compositions are built by first-part recursion (first part ascending)
- compositions with a prescribed maximal-part multiplicity are spliced around
  the block of maximal parts (maximal value ascending)
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from crankshaft.errors import DomainError


@dataclass(frozen=True)
class Partition:
    """
    Non-increasing sequence of positive parts
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise DomainError(f"partition parts must be positive: {parts}")
            if i and parts[i - 1] < p:
                raise DomainError(f"partition parts must be non-increasing: {parts}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def _trusted(cls, parts: Tuple[int, ...]) -> 'Partition':
        obj = object.__new__(cls)
        object.__setattr__(obj, 'parts', parts)
        return obj

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> 'Partition':
        """
        Build a partition from parts in any order
        """
        return cls(tuple(sorted((int(p) for p in parts), reverse=True)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def multiplicity(self, value: int) -> int:
        return self.parts.count(value)

    def is_distinct(self) -> bool:
        return all(a > b for a, b in zip(self.parts, self.parts[1:]))

    def smallest_part_above(self, bound: int) -> Optional[int]:
        """
        Smallest part strictly greater than bound, or None
        """
        above = [p for p in self.parts if p > bound]
        return above[-1] if above else None

    def with_parts(self, *parts: int) -> 'Partition':
        return Partition.from_parts(self.parts + tuple(parts))

    def without_parts(self, value: int, count: int = 1) -> 'Partition':
        """
        Remove `count` copies of `value`; DomainError if there are fewer
        """
        if self.multiplicity(value) < count:
            raise DomainError(f"{self.parts} has fewer than {count} parts equal to {value}")
        remaining = list(self.parts)
        for _ in range(count):
            remaining.remove(value)
        return Partition._trusted(tuple(remaining))

    def conjugate(self) -> 'Partition':
        return conjugate(self)

    def rotate_star(self) -> 'Composition':
        return rotate_star(self)

    def crank(self) -> int:
        return crank(self)

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return '(' + ','.join(str(p) for p in self.parts) + ')'


@dataclass(frozen=True)
class Composition:
    """
    Ordered sequence of positive parts
    """

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise DomainError(f"composition parts must be positive: {parts}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def _trusted(cls, parts: Tuple[int, ...]) -> 'Composition':
        obj = object.__new__(cls)
        object.__setattr__(obj, 'parts', parts)
        return obj

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def max_part(self) -> int:
        return max(self.parts) if self.parts else 0

    def first_max_index(self) -> int:
        """
        0-based position of the first maximal part
        """
        if not self.parts:
            raise DomainError("empty composition has no maximal part")
        return self.parts.index(self.max_part)

    def last_max_index(self) -> int:
        """
        0-based position of the last maximal part
        """
        if not self.parts:
            raise DomainError("empty composition has no maximal part")
        return len(self.parts) - 1 - self.parts[::-1].index(self.max_part)

    def max_multiplicity(self) -> int:
        return self.parts.count(self.max_part) if self.parts else 0

    def is_unimodal(self) -> bool:
        return is_unimodal(self)

    def replace(self, index: int, value: int) -> 'Composition':
        parts = list(self.parts)
        parts[index] = value
        return Composition(tuple(parts))

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return '(' + ','.join(str(p) for p in self.parts) + ')'


@dataclass(frozen=True)
class VectorPartition:
    """
    Triple (pi1, pi2, pi3) with pi1 distinct; sign (-1)^l(pi1), crank l(pi2) - l(pi3)
    """

    pi1: Partition
    pi2: Partition
    pi3: Partition

    def __post_init__(self):
        if not self.pi1.is_distinct():
            raise DomainError(f"first component must have distinct parts: {self.pi1.parts}")

    @property
    def sign(self) -> int:
        return -1 if self.pi1.length % 2 else 1

    @property
    def crank(self) -> int:
        return self.pi2.length - self.pi3.length

    @property
    def size(self) -> int:
        return self.pi1.size + self.pi2.size + self.pi3.size

    def to_json(self) -> Dict[str, List[int]]:
        return {"pi1": self.pi1.to_json(), "pi2": self.pi2.to_json(), "pi3": self.pi3.to_json()}


def partitions_with_parts_at_most(n: int, bound: int) -> Iterator[Partition]:
    """
    Partitions of n with every part <= bound, reverse lexicographic order

    Args:
        n: Size
        bound: Largest allowed part

    Yields:
        Partition objects; n = 0 yields the empty partition
    """
    if n < 0:
        return
    if n == 0:
        yield Partition._trusted(())
        return
    bound = min(bound, n)
    if bound < 1:
        return
    parts = [bound] * (n // bound)
    if n % bound:
        parts.append(n % bound)
    while True:
        yield Partition._trusted(tuple(parts))
        ones = 0
        while parts and parts[-1] == 1:
            parts.pop()
            ones += 1
        if not parts:
            return
        value = parts[-1] - 1
        parts[-1] = value
        rest = ones + 1
        while rest > value:
            parts.append(value)
            rest -= value
        if rest:
            parts.append(rest)


def partitions_of(n: int) -> Iterator[Partition]:
    """
    Every partition of n exactly once, reverse lexicographic order
    """
    return partitions_with_parts_at_most(n, n)


def distinct_partitions_of(n: int, bound: Optional[int] = None) -> Iterator[Partition]:
    """
    Partitions of n into distinct parts (each <= bound), reverse lexicographic order
    """
    if bound is None:
        bound = n
    if n == 0:
        yield Partition._trusted(())
        return
    for first in range(min(n, bound), 0, -1):
        # the remaining distinct parts below `first` can sum to at most first(first-1)/2
        if first * (first - 1) // 2 < n - first:
            break
        for rest in distinct_partitions_of(n - first, first - 1):
            yield Partition._trusted((first,) + rest.parts)


def bounded_partition_count(max_part: int, max_length: int, size: int) -> int:
    """
    p(N, M, size): partitions of size with at most M parts, each at most N
    """
    if max_part <= 0 or max_length <= 0:
        return 1 if size == 0 else 0
    return sum(1 for lam in partitions_with_parts_at_most(size, max_part) if lam.length <= max_length)


def is_unimodal(c) -> bool:
    """
    True iff the parts weakly rise to some pivot and weakly fall after it
    """
    parts = c.parts if isinstance(c, Composition) else tuple(c)
    if not parts:
        return False
    i = 0
    last = len(parts) - 1
    while i < last and parts[i] <= parts[i + 1]:
        i += 1
    while i < last and parts[i] >= parts[i + 1]:
        i += 1
    return i == last


def unimodal_compositions_of(n: int) -> Iterator[Composition]:
    """
    All unimodal compositions of n, first part ascending

    A part may only exceed its predecessor while no descent has happened yet.
    """
    if n < 1:
        return
    parts: List[int] = []

    def extend(remaining: int, previous: int, falling: bool) -> Iterator[Composition]:
        if remaining == 0:
            yield Composition._trusted(tuple(parts))
            return
        top = min(previous, remaining) if falling else remaining
        for first in range(1, top + 1):
            parts.append(first)
            yield from extend(remaining - first, first, falling or first < previous)
            parts.pop()

    yield from extend(n, 0, False)


def unimodal_with_max_mult(n: int, m: int) -> Iterator[Composition]:
    """
    Unimodal compositions of n + m whose maximal part occurs exactly m times

    For each maximal value v the composition is a non-decreasing run of parts
    < v, then m copies of v, then a non-increasing run of parts < v.
    """
    if m < 1:
        raise DomainError(f"maximal-part multiplicity must be positive, got {m}")
    if n < 0:
        return
    total = n + m
    value = 1
    while m * value <= total:
        rest = total - m * value
        block = (value,) * m
        if value == 1:
            if rest == 0:
                yield Composition._trusted(block)
        else:
            runs = [list(partitions_with_parts_at_most(size, value - 1)) for size in range(rest + 1)]
            for left_size in range(rest + 1):
                for left in runs[left_size]:
                    head = tuple(reversed(left.parts)) + block
                    for right in runs[rest - left_size]:
                        yield Composition._trusted(head + right.parts)
        value += 1


def unimodal_family(n: int, m: int) -> Iterator[Composition]:
    """
    Members of U_m(n): unimodal compositions of n (m = 0) or of n + m with
    exactly m maximal parts (m >= 1)
    """
    if m == 0:
        return unimodal_compositions_of(n)
    return unimodal_with_max_mult(n, m)


def total_maximal_parts(n: int) -> int:
    """
    Number of maximal parts summed over all unimodal compositions of n
    """
    return sum(c.max_multiplicity() for c in unimodal_compositions_of(n))


def conjugate(lam: Partition) -> Partition:
    """
    Transpose of the Ferrers diagram
    """
    parts = lam.parts
    result = []
    i = len(parts)
    for column in range(1, lam.largest + 1):
        while i and parts[i - 1] < column:
            i -= 1
        result.append(i)
    return Partition._trusted(tuple(result))


def rotate_star(lam: Partition) -> Composition:
    """
    lambda*: the parts of the conjugate in non-decreasing order
    """
    return Composition._trusted(tuple(reversed(conjugate(lam).parts)))


def staircase(j: int) -> Partition:
    """
    Pentagonal staircase G_j with |G_j| = j(3j-1)/2

    G_j = (2j-1, ..., j) and G_{-j} = (2j, ..., j+1) for j > 0; G_0 is empty.
    """
    if j > 0:
        return Partition._trusted(tuple(range(2 * j - 1, j - 1, -1)))
    if j < 0:
        i = -j
        return Partition._trusted(tuple(range(2 * i, i, -1)))
    return Partition._trusted(())


def staircase_index(lam: Partition) -> Optional[int]:
    """
    j such that lam == G_j, or None
    """
    r = lam.length
    if r == 0:
        return 0
    if lam == staircase(r):
        return r
    if lam == staircase(-r):
        return -r
    return None


def crank(lam: Partition) -> int:
    """
    Crank: the largest part when there are no ones, otherwise
    (number of parts larger than the number of ones) - (number of ones)
    """
    if not lam.parts:
        raise DomainError("crank of the empty partition is undefined")
    ones = lam.multiplicity(1)
    if ones == 0:
        return lam.largest
    larger = sum(1 for p in lam.parts if p > ones)
    return larger - ones


def vector_partitions_of(n: int) -> Iterator[VectorPartition]:
    """
    Every vector partition of n exactly once, ordered by (|pi1|, |pi2|) then
    by the component iterators
    """
    if n < 0:
        return
    unrestricted = [list(partitions_of(s)) for s in range(n + 1)]
    for s1 in range(n + 1):
        for pi1 in distinct_partitions_of(s1):
            for s2 in range(n - s1 + 1):
                for pi2 in unrestricted[s2]:
                    for pi3 in unrestricted[n - s1 - s2]:
                        yield VectorPartition(pi1, pi2, pi3)


def as_partition(value) -> Partition:
    """
    Accept a Partition or any sequence of parts
    """
    if isinstance(value, Partition):
        return value
    return Partition.from_parts(value)


def as_composition(value) -> Composition:
    if isinstance(value, Composition):
        return value
    return Composition(tuple(value))
