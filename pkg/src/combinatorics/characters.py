"""Irreducible characters of S_n by the Murnaghan-Nakayama rule.

Character values are exact Python integers. A finished ``CharacterTable``
stores them in an int64 array when every entry fits and in an object array
otherwise; values never wrap.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..errors import DomainError, ResourceBudgetError
from .partitions import Partition, PartitionSet, enumerate_partitions

logger = logging.getLogger(__name__)

INT64_LIMIT = 2 ** 63 - 1


@dataclass(frozen=True)
class ClassData:
    """Conjugacy class of S_n with cycle type ``rho``."""
    rho: Partition
    centralizer_order: int
    class_size: int


def centralizer_order(rho: Partition) -> int:
    """z_rho = prod_i i^{m_i} m_i!"""
    z = 1
    for part, mult in rho.multiplicities().items():
        z *= part ** mult * factorial(mult)
    return z


def class_data(rho: Partition) -> ClassData:
    z = centralizer_order(rho)
    return ClassData(rho=rho, centralizer_order=z, class_size=factorial(rho.n) // z)


def _border_strips(shape: Tuple[int, ...], length: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """Yield (sign, remaining shape) for every border strip of ``length``.

    Works on the beta-set of the shape: removing a strip moves one bead
    down by ``length`` onto an empty position, and the leg length is the
    number of beads jumped over.
    """
    ell = len(shape)
    beta = [shape[i] + ell - 1 - i for i in range(ell)]
    occupied = set(beta)
    for b in beta:
        target = b - length
        if target < 0 or target in occupied:
            continue
        leg = sum(1 for c in beta if target < c < b)
        moved = sorted([c for c in beta if c != b] + [target], reverse=True)
        remaining = tuple(
            part for part in (moved[j] - (ell - 1 - j) for j in range(ell)) if part > 0
        )
        yield (-1 if leg % 2 else 1), remaining


@lru_cache(maxsize=None)
def _mn(shape: Tuple[int, ...], rho: Tuple[int, ...]) -> int:
    if not rho:
        return 1
    head, tail = rho[0], rho[1:]
    return sum(sign * _mn(rest, tail) for sign, rest in _border_strips(shape, head))


def mn_character(lam: Partition, rho: Partition) -> int:
    """chi_lambda(rho), removing strips for the largest remaining cycle first."""
    if lam.n != rho.n:
        raise DomainError(f"size mismatch: |lambda| = {lam.n}, |rho| = {rho.n}")
    return _mn(lam.parts, rho.parts)


def dimension(lam: Partition) -> int:
    """f^lambda by the hook length formula."""
    conj = lam.conjugate().parts
    hooks = 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(lam.n) // hooks


def character_row(lam: Partition, classes: Optional[PartitionSet] = None) -> List[int]:
    """chi_lambda over every cycle type, in canonical order."""
    classes = classes or enumerate_partitions(lam.n)
    return [_mn(lam.parts, rho.parts) for rho in classes]


class CharacterTable:
    """Exact character table of S_n, rows = irreducibles, columns = classes."""

    def __init__(self, n: int, order: PartitionSet, rows: Sequence[Sequence[int]]):
        self.n = n
        self.order = order
        self.classes: Tuple[ClassData, ...] = tuple(class_data(rho) for rho in order)
        self.values = _as_exact_array(rows)
        self.values.setflags(write=False)
        self._exact: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.order)

    @property
    def is_fixed_width(self) -> bool:
        """True when the values are held in an int64 array."""
        return self.values.dtype == np.int64

    @property
    def exact_values(self) -> np.ndarray:
        """Object array of Python ints (arbitrary precision)."""
        if self._exact is None:
            self._exact = self.values.astype(object)
        return self._exact

    @property
    def centralizer_orders(self) -> List[int]:
        return [c.centralizer_order for c in self.classes]

    @property
    def class_sizes(self) -> List[int]:
        return [c.class_size for c in self.classes]

    def row(self, lam: Partition) -> np.ndarray:
        return self.values[self.order.index(lam)]

    def value(self, lam: Partition, rho: Partition) -> int:
        return int(self.values[self.order.index(lam), self.order.index(rho)])

    def dimensions(self) -> List[int]:
        """The identity column, f^lambda for every lambda."""
        return [int(v) for v in self.exact_values[:, -1]]

    def check_orthogonality(self) -> bool:
        """Exact row orthogonality sum_rho chi_l chi_m / z_rho = delta.

        Multiplied through by n!, so the check is V diag(n!/z) V^T = n! I
        over the integers.
        """
        values = self.exact_values
        weighted = values * np.array(self.class_sizes, dtype=object)
        gram = weighted.dot(values.T)
        expected = np.identity(len(self), dtype=object) * factorial(self.n)
        return bool((gram == expected).all())


def _as_exact_array(rows: Sequence[Sequence[int]]) -> np.ndarray:
    biggest = max((abs(int(v)) for row in rows for v in row), default=0)
    if biggest <= INT64_LIMIT:
        return np.array(rows, dtype=np.int64)
    logger.info("character values exceed int64 (max %d); using arbitrary precision", biggest)
    return np.array([[int(v) for v in row] for row in rows], dtype=object)


def _row_worker(args: Tuple[Tuple[int, ...], int]) -> List[int]:
    parts, n = args
    return character_row(Partition(parts), enumerate_partitions(n))


def build_table(
    n: int,
    threads: int = 1,
    max_entries: Optional[int] = None,
    show_progress: bool = False,
) -> CharacterTable:
    """Character table of S_n with rows and columns in descending lex order.

    Raises:
        ResourceBudgetError: if p(n)^2 exceeds ``max_entries``.
    """
    order = enumerate_partitions(n)
    size = len(order)
    if max_entries is not None and size * size > max_entries:
        raise ResourceBudgetError(
            f"character table for n={n} has {size * size} entries, "
            f"budget is {max_entries}"
        )

    logger.info("building character table for n=%d (%d classes)", n, size)
    jobs = [(lam.parts, n) for lam in order]
    if threads <= 1 or size < 64:
        rows = [_row_worker(job) for job in tqdm(jobs, disable=not show_progress, desc="chi rows")]
    else:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            rows = list(tqdm(
                executor.map(_row_worker, jobs, chunksize=max(1, size // (8 * threads))),
                total=size,
                disable=not show_progress,
                desc="chi rows",
            ))
    return CharacterTable(n, order, rows)
