"""r- and b-loadings of partitions and triples."""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np

from ..combinatorics.kronecker import Triple
from ..combinatorics.partitions import Partition, PartitionSet, enumerate_partitions
from ..errors import ConvergenceError, DomainError
from .operators import DifferenceOperator, SimilitudeOperator
from .power_iteration import Converge, IterationMode, PowerIterationResult, power_iteration

logger = logging.getLogger(__name__)

MIN_SPREAD = 1e-12


@dataclass(frozen=True)
class TripleLoading:
    r: float
    b: float


@dataclass(frozen=True, eq=False)
class LoadingTable:
    """Normalized loadings of every partition of n, indexed like ``order``.

    ``v`` and ``w`` are the raw unit eigenvectors of Y_n and Z_n.
    """
    n: int
    order: PartitionSet
    r: np.ndarray
    b: np.ndarray
    v: np.ndarray
    w: np.ndarray
    iterations_used: Tuple[int, int]
    residuals: Tuple[float, float]
    mode: str = ""

    def __post_init__(self):
        for name in ("r", "b", "v", "w"):
            array = getattr(self, name)
            if array.shape != (len(self.order),):
                raise DomainError(
                    f"{name} has shape {array.shape}, expected ({len(self.order)},)"
                )
            array.setflags(write=False)

    def __len__(self) -> int:
        return len(self.order)

    def index(self, lam: Partition) -> int:
        return self.order.index(lam)

    def r_of(self, lam: Partition) -> float:
        return float(self.r[self.order.index(lam)])

    def b_of(self, lam: Partition) -> float:
        return float(self.b[self.order.index(lam)])

    def rows(self) -> Iterator[Tuple[Partition, float, float]]:
        for lam, r, b in zip(self.order, self.r, self.b):
            yield lam, float(r), float(b)


def normalize(vector: np.ndarray, label: str = "vector") -> np.ndarray:
    """Min-max scale to [0, 100] with the extremes pinned to exactly 0 and 100."""
    vector = np.asarray(vector, dtype=np.float64)
    low, high = float(vector.min()), float(vector.max())
    spread = high - low
    if spread < MIN_SPREAD:
        raise DomainError(
            f"{label} has degenerate spread {spread:.3g}; loadings are undefined"
        )
    scaled = 100.0 * (vector - low) / spread
    scaled = np.clip(scaled, 0.0, 100.0)
    scaled[int(np.argmin(vector))] = 0.0
    scaled[int(np.argmax(vector))] = 100.0
    return scaled


def _check_positive(result: PowerIterationResult, label: str, mode: IterationMode) -> None:
    if isinstance(mode, Converge) and not (result.vector > 0).all():
        raise ConvergenceError(f"{label} eigenvector is not strictly positive")


def _check_size(n: int) -> PartitionSet:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise DomainError(f"loadings need n >= 2, got {n!r}")
    return enumerate_partitions(n)


def compute_r_loadings(n: int, mode: IterationMode = Converge()) -> Tuple[np.ndarray, PowerIterationResult]:
    """r-loadings only, for when the difference matrix is not needed."""
    order = _check_size(n)
    result = power_iteration(SimilitudeOperator(order), len(order), mode)
    _check_positive(result, f"Y_{n}", mode)
    return normalize(result.vector, f"Perron vector of Y_{n}"), result


def compute_b_loadings(
    n: int,
    mode: IterationMode = Converge(),
    block_rows: int = 256,
) -> Tuple[np.ndarray, PowerIterationResult]:
    """b-loadings only."""
    order = _check_size(n)
    if n == 2:
        # Z_2 = [[0, 2], [2, 0]] has the constant Perron vector (1, 1) / sqrt(2)
        raise DomainError("b-loadings are degenerate for n=2: the Perron vector of Z_2 is constant")
    result = power_iteration(DifferenceOperator(order, block_rows), len(order), mode)
    _check_positive(result, f"Z_{n}", mode)
    return normalize(result.vector, f"Perron vector of Z_{n}"), result


def compute_loadings(
    n: int,
    mode: IterationMode = Converge(),
    block_rows: int = 256,
) -> LoadingTable:
    """
    Run power iteration on Y_n and Z_n and normalize both eigenvectors.

    Args:
        n: Size of the partitions (n >= 3; n = 2 has no b-loadings)
        mode: ``Converge(tol, max_iters)`` or ``Fixed(k)``
        block_rows: Rows of Z_n materialized per block

    Raises:
        DomainError: for n < 2 or a degenerate eigenvector spread
        ConvergenceError: when power iteration fails
    """
    order = _check_size(n)
    logger.info("computing loadings for n=%d (%d partitions, %s)", n, len(order), mode.label)
    r, y_result = compute_r_loadings(n, mode)
    b, z_result = compute_b_loadings(n, mode, block_rows)
    return LoadingTable(
        n=n,
        order=order,
        r=r,
        b=b,
        v=y_result.vector,
        w=z_result.vector,
        iterations_used=(y_result.iterations, z_result.iterations),
        residuals=(y_result.residual, z_result.residual),
        mode=mode.label,
    )


def sorted_indices(t: Triple, order: PartitionSet) -> Tuple[int, int, int]:
    i, j, k = sorted(order.index(p) for p in t)
    return i, j, k


def triple_loading(t: Triple, table: LoadingTable) -> TripleLoading:
    """r(t) and b(t), summed in index order so every permutation agrees bit for bit."""
    if t.n != table.n:
        raise DomainError(f"size mismatch: triple of {t.n}, loadings of {table.n}")
    i, j, k = sorted_indices(t, table.order)
    return TripleLoading(
        r=float(table.r[i] + table.r[j] + table.r[k]),
        b=float(table.b[i] + table.b[j] + table.b[k]),
    )


def loading_table_from_arrays(
    n: int,
    r: np.ndarray,
    b: np.ndarray,
    v: Optional[np.ndarray] = None,
    w: Optional[np.ndarray] = None,
    iterations_used: Tuple[int, int] = (0, 0),
    residuals: Tuple[float, float] = (0.0, 0.0),
    mode: str = "",
) -> LoadingTable:
    """Rebuild a LoadingTable from stored columns (cache, fixtures)."""
    order = enumerate_partitions(n)
    r = np.array(r, dtype=np.float64)
    b = np.array(b, dtype=np.float64)
    v = np.array(v, dtype=np.float64) if v is not None else np.full(len(order), np.nan)
    w = np.array(w, dtype=np.float64) if w is not None else np.full(len(order), np.nan)
    return LoadingTable(n, order, r, b, v, w, iterations_used, residuals, mode)
