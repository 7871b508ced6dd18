"""Thresholds for large n from the conjectured attaining triples, and the depth filter."""

import logging
from math import factorial
from typing import List, Optional, Tuple, Union

import numpy as np

from ..combinatorics.characters import CharacterTable, centralizer_order, character_row
from ..combinatorics.kronecker import KroneckerEvaluator, Triple
from ..combinatorics.partitions import Partition, PartitionSet, enumerate_partitions
from ..errors import CharacterTableError, DomainError
from ..loadings.loadings import LoadingTable
from .scan import Thresholds

logger = logging.getLogger(__name__)

Loadings = Union[LoadingTable, np.ndarray]

TIE_TOLERANCE = 1e-9


def _vector(loadings: Loadings, name: str, n: int) -> np.ndarray:
    if isinstance(loadings, LoadingTable):
        if loadings.n != n:
            raise DomainError(f"size mismatch: n={n}, loadings for {loadings.n}")
        return getattr(loadings, name)
    vector = np.asarray(loadings, dtype=np.float64)
    expected = len(enumerate_partitions(n))
    if vector.shape != (expected,):
        raise DomainError(f"{name}-loadings have shape {vector.shape}, expected ({expected},)")
    return vector


def _sum(values: np.ndarray, indices) -> float:
    i, j, k = sorted(indices)
    return float(values[i] + values[j] + values[k])


def _lex_smallest(order: PartitionSet, candidates: List[Tuple[float, Tuple[int, int, int]]], tol: float) -> Tuple[float, Triple]:
    best = min(value for value, _ in candidates)
    i, j, k = max(index for value, index in candidates if value <= best + tol)
    return best, Triple(order[i], order[j], order[k])


def conjectured_r_star(n: int, loadings: Loadings) -> Tuple[float, Triple]:
    """r(t) for t = ((k^4), (2^2k), (2^2k)) with n = 4k.

    ``loadings`` may be a LoadingTable or the bare r-loading vector.

    Raises:
        DomainError: if n is not a multiple of 4 with k >= 2
    """
    if n % 4 or n < 8:
        raise DomainError(f"conjectured r* needs n = 4k with k >= 2, got n={n}")
    k = n // 4
    r = _vector(loadings, "r", n)
    order = enumerate_partitions(n)
    t = Triple(Partition((k,) * 4), Partition((2,) * (2 * k)), Partition((2,) * (2 * k)))
    return _sum(r, (order.index(p) for p in t)), t


def _class_sizes(order: PartitionSet) -> np.ndarray:
    n_factorial = factorial(order.n)
    return np.array([n_factorial // centralizer_order(rho) for rho in order], dtype=object)


def _cube_coefficient(chi, sizes: np.ndarray, n: int) -> int:
    row = np.array([int(v) for v in chi], dtype=object)
    total = int((sizes * row * row * row).sum())
    quotient, remainder = divmod(total, factorial(n))
    if remainder or quotient < 0:
        raise CharacterTableError(f"character sum {total} is not a multiple of {n}!")
    return quotient


def conjectured_b_star(
    n: int,
    table: Optional[CharacterTable],
    loadings: Loadings,
    tol: float = TIE_TOLERANCE,
) -> Tuple[float, Triple]:
    """min 3 b_lambda over lambda with g(lambda, lambda, lambda) = 0, for n = 3k.

    Partitions are visited by increasing b-loading and their character rows
    are computed only when needed (from ``table`` if given), so n beyond the
    reach of a full character table stays feasible.

    Raises:
        DomainError: if n is not a multiple of 3 with k >= 2, or no lambda
            has g(lambda, lambda, lambda) = 0
    """
    if n % 3 or n < 6:
        raise DomainError(f"conjectured b* needs n = 3k with k >= 2, got n={n}")
    if table is not None and table.n != n:
        raise DomainError(f"size mismatch: n={n}, character table of S_{table.n}")
    b = _vector(loadings, "b", n)
    order = enumerate_partitions(n)
    sizes = _class_sizes(order)

    best: Optional[float] = None
    candidates: List[Tuple[float, Tuple[int, int, int]]] = []
    checked = 0
    for i in np.argsort(b, kind="stable"):
        i = int(i)
        value = _sum(b, (i, i, i))
        if best is not None and value > best + tol:
            break
        chi = table.exact_values[i] if table is not None else character_row(order[i], order)
        checked += 1
        if _cube_coefficient(chi, sizes, n) == 0:
            candidates.append((value, (i, i, i)))
            best = value if best is None else min(best, value)

    logger.info("conjectured b* for n=%d: checked %d diagonal triples", n, checked)
    if not candidates:
        raise DomainError(f"no partition of {n} has g(lambda, lambda, lambda) = 0")
    return _lex_smallest(order, candidates, tol)


def conjectured_b_star_pairs(
    n: int,
    table: CharacterTable,
    loadings: Loadings,
    tol: float = TIE_TOLERANCE,
) -> Tuple[float, Triple]:
    """min b(t) over zero triples with a repeated entry (lambda = mu or mu = nu).

    One Kronecker column g(lambda, lambda, .) per partition instead of a
    full scan.
    """
    if table.n != n:
        raise DomainError(f"size mismatch: n={n}, character table of S_{table.n}")
    b = _vector(loadings, "b", n)
    evaluator = KroneckerEvaluator(table)
    candidates: List[Tuple[float, Tuple[int, int, int]]] = []
    for i in range(len(table)):
        column = evaluator.pair_column(i)
        for k in np.nonzero(column == 0)[0]:
            index = tuple(sorted((i, i, int(k))))
            candidates.append((_sum(b, index), index))
    if not candidates:
        raise DomainError(f"every triple of {n} with a repeated entry has g != 0")
    return _lex_smallest(table.order, candidates, tol)


def depth_filter_min_r(n: int, loadings: Loadings, table: Optional[CharacterTable] = None) -> float:
    """Minimum r(t) over triples violating |d_l - d_m| <= d_n <= d_l + d_m.

    Every such triple has g(t) = 0 and the condition needs only depths, so
    no character values are used. Returns +inf when no triple violates it.
    """
    if table is not None and table.n != n:
        raise DomainError(f"size mismatch: n={n}, character table of S_{table.n}")
    r = _vector(loadings, "r", n)
    depths = enumerate_partitions(n).depths()
    best = float("inf")
    for i in range(len(r)):
        tail = np.arange(i, len(r))
        j = tail[:, None]
        k = tail[None, :]
        d_i, d_j, d_k = depths[i], depths[j], depths[k]
        violating = (np.abs(d_i - d_j) > d_k) | (d_k > d_i + d_j)
        violating &= k >= j
        if violating.any():
            values = (r[i] + r[j]) + r[k]
            best = min(best, float(values[violating].min()))
    return best


def conjectured_thresholds(
    n: int,
    loadings: LoadingTable,
    table: Optional[CharacterTable] = None,
) -> Thresholds:
    """Thresholds from the conjectures that apply to n (r* for 4 | n, b* for 3 | n)."""
    r_star = b_star = None
    argmin_r = argmin_b = None
    if n % 4 == 0 and n >= 8:
        r_star, argmin_r = conjectured_r_star(n, loadings)
    if n % 3 == 0 and n >= 6:
        b_star, argmin_b = conjectured_b_star(n, table, loadings)
    if r_star is None and b_star is None:
        raise DomainError(f"no conjectured threshold applies to n={n} (needs 3 | n or 4 | n)")
    return Thresholds(n, r_star, b_star, argmin_r, argmin_b, provenance="conjectured", mode=loadings.mode)
