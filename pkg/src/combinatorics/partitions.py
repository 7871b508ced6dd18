"""Integer partitions: enumeration, ordering, parsing and formatting."""

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError

_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of positive integers.

    Only the positive parts are stored; the zero-padded vector of length n
    is built on demand by ``padded``.
    """
    parts: Tuple[int, ...]
    n: int = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise DomainError("a partition needs at least one positive part")
        if any(p <= 0 for p in parts):
            raise DomainError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __str__(self) -> str:
        return format_partition(self, compact=True)

    def __repr__(self) -> str:
        return f"Partition({format_partition(self, compact=True)})"

    @property
    def depth(self) -> int:
        return self.n - self.parts[0]

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def padded(self, length: Optional[int] = None) -> Tuple[int, ...]:
        """Zero-padded vector of the given length (default n)."""
        length = self.n if length is None else length
        return self.parts + (0,) * (length - len(self.parts))

    def multiplicities(self) -> Dict[int, int]:
        """Map part -> number of times it occurs."""
        return {part: len(list(run)) for part, run in groupby(self.parts)}


class PartitionSet:
    """All partitions of n in descending lexicographic order.

    Immutable after construction; ``index`` gives the row of a partition in
    every vector and matrix indexed by this set.
    """

    def __init__(self, n: int, items: Sequence[Partition]):
        self.n = n
        self.items: Tuple[Partition, ...] = tuple(items)
        self._index = {p: i for i, p in enumerate(self.items)}
        self._matrix: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.items)

    def __getitem__(self, i: int) -> Partition:
        return self.items[i]

    def __contains__(self, p: Partition) -> bool:
        return p in self._index

    def index(self, p: Partition) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise DomainError(f"{p} is not a partition of {self.n}") from None

    def matrix(self) -> np.ndarray:
        """The p(n) x n matrix whose rows are the zero-padded partitions."""
        if self._matrix is None:
            m = np.zeros((len(self.items), self.n), dtype=np.int64)
            for i, p in enumerate(self.items):
                m[i, :len(p)] = p.parts
            m.setflags(write=False)
            self._matrix = m
        return self._matrix

    def depths(self) -> np.ndarray:
        return np.array([p.depth for p in self.items], dtype=np.int64)

    def conjugation_map(self) -> np.ndarray:
        """Index of the conjugate of each partition."""
        return np.array([self._index[p.conjugate()] for p in self.items], dtype=np.int64)


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")


def _successor(parts: List[int]) -> Optional[List[int]]:
    """Next partition in descending lexicographic order, or None after (1^n)."""
    parts = list(parts)
    ones = 0
    while parts and parts[-1] == 1:
        parts.pop()
        ones += 1
    if not parts:
        return None
    parts[-1] -= 1
    largest = parts[-1]
    remaining = ones + 1
    while remaining > largest:
        parts.append(largest)
        remaining -= largest
    if remaining:
        parts.append(remaining)
    return parts


def iter_partitions(n: int) -> Iterator[Partition]:
    """Yield the partitions of n from (n) down to (1^n)."""
    _check_n(n)
    parts: Optional[List[int]] = [n]
    while parts is not None:
        yield Partition(tuple(parts))
        parts = _successor(parts)


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> PartitionSet:
    """All p(n) partitions of n in descending lexicographic order."""
    return PartitionSet(n, list(iter_partitions(n)))


@lru_cache(maxsize=None)
def _euler_counts(n: int) -> Tuple[int, ...]:
    counts = [1]
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            first = k * (3 * k - 1) // 2
            if first > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * counts[m - first]
            second = k * (3 * k + 1) // 2
            if second <= m:
                total += sign * counts[m - second]
            k += 1
        counts.append(total)
    return tuple(counts)


def count_partitions(n: int) -> int:
    """p(n) via Euler's pentagonal recurrence (independent of enumeration)."""
    _check_n(n)
    return _euler_counts(n)[n]


def conjugate(partition: Partition) -> Partition:
    """Transpose of the Young diagram."""
    parts = partition.parts
    return Partition(tuple(sum(1 for p in parts if p > i) for i in range(parts[0])))


def depth(partition: Partition) -> int:
    """n minus the largest part."""
    return partition.depth


def parse_partition(text: str, n: Optional[int] = None) -> Partition:
    """Parse ``"2,1^5"``, ``"(5,4,1)"`` or a zero-padded list into a Partition.

    Raises:
        DomainError: on malformed syntax, increasing parts or when the
            parts do not sum to ``n``.
    """
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    body = re.sub(r"\s+", "", body)
    if not body:
        raise DomainError(f"empty partition: {text!r}")

    parts: List[int] = []
    for token in body.split(","):
        match = _TOKEN.match(token)
        if not match:
            raise DomainError(f"malformed partition token {token!r} in {text!r}")
        value = int(match.group(1))
        repeat = int(match.group(2)) if match.group(2) is not None else 1
        if repeat < 1:
            raise DomainError(f"exponent must be positive in {token!r}")
        parts.extend([value] * repeat)

    # trailing zeros come from the padded form
    while parts and parts[-1] == 0:
        parts.pop()
    if not parts:
        raise DomainError(f"partition has no positive parts: {text!r}")
    if 0 in parts:
        raise DomainError(f"zero part before a positive part in {text!r}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise DomainError(f"parts are not weakly decreasing in {text!r}")

    partition = Partition(tuple(parts))
    if n is not None and partition.n != n:
        raise DomainError(f"partition {text!r} has size {partition.n}, expected {n}")
    return partition


def format_partition(partition: Partition, compact: bool = True) -> str:
    """Canonical string form; ``compact`` collapses runs into exponents."""
    if not compact:
        return ",".join(str(p) for p in partition.parts)
    tokens = []
    for part, run in groupby(partition.parts):
        length = len(list(run))
        tokens.append(f"{part}^{length}" if length >= 2 else str(part))
    return ",".join(tokens)


def compare_lex(lam: Partition, mu: Partition) -> int:
    """-1, 0 or 1 comparing zero-padded vectors lexicographically.

    Two partitions of the same n cannot be proper prefixes of one another,
    so comparing the stored parts is the padded comparison.
    """
    if lam.n != mu.n:
        raise DomainError(f"cannot compare partitions of {lam.n} and {mu.n}")
    if lam.parts == mu.parts:
        return 0
    return 1 if lam.parts > mu.parts else -1
