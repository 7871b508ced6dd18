"""Matrix-free similitude (Y_n) and difference (Z_n) operators."""

from typing import Optional

import numpy as np
from scipy.sparse.linalg import LinearOperator
from scipy.spatial.distance import cdist

from ..combinatorics.partitions import PartitionSet, enumerate_partitions
from ..errors import DomainError


class SimilitudeOperator(LinearOperator):
    """Y_n = P_n P_n^T applied as P_n (P_n^T x), O(p(n) n) per product."""

    def __init__(self, partitions: PartitionSet):
        self.partitions = partitions
        self._rows = partitions.matrix().astype(np.float64)
        size = len(partitions)
        super().__init__(dtype=np.float64, shape=(size, size))

    def _matvec(self, x):
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        return self._rows @ (self._rows.T @ x)

    def _rmatvec(self, x):
        return self._matvec(x)

    def dense(self) -> np.ndarray:
        """Materialized Y_n as integers (small n only)."""
        rows = self.partitions.matrix()
        return rows @ rows.T


class DifferenceOperator(LinearOperator):
    """Z_n with z_{l,m} = ||l - m||_1, built block by block on every product."""

    def __init__(self, partitions: PartitionSet, block_rows: int = 256):
        self.partitions = partitions
        self.block_rows = max(1, int(block_rows))
        self._rows = partitions.matrix().astype(np.float64)
        size = len(partitions)
        super().__init__(dtype=np.float64, shape=(size, size))

    def _matvec(self, x):
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        out = np.empty(self.shape[0], dtype=np.float64)
        for start in range(0, self.shape[0], self.block_rows):
            stop = min(start + self.block_rows, self.shape[0])
            block = cdist(self._rows[start:stop], self._rows, metric="cityblock")
            out[start:stop] = block @ x
        return out

    def _rmatvec(self, x):
        return self._matvec(x)

    def dense(self) -> np.ndarray:
        """Materialized Z_n as integers (small n only)."""
        return np.rint(cdist(self._rows, self._rows, metric="cityblock")).astype(np.int64)


def _checked(n: int, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    size = len(enumerate_partitions(n))
    if x.shape != (size,):
        raise DomainError(f"vector has shape {x.shape}, expected ({size},) for n={n}")
    return x


def similitude_matvec(n: int, x) -> np.ndarray:
    """Y_n x without materializing Y_n."""
    x = _checked(n, x)
    return SimilitudeOperator(enumerate_partitions(n)).matvec(x)


def difference_matvec(n: int, x, block_rows: Optional[int] = None) -> np.ndarray:
    """Z_n x with the entries of Z_n computed on the fly."""
    x = _checked(n, x)
    return DifferenceOperator(enumerate_partitions(n), block_rows or 256).matvec(x)
