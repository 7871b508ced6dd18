"""Kronecker coefficients of the symmetric group.

g(lambda, mu, nu) is the multiplicity of S_nu in S_lambda (x) S_mu, evaluated
as the character inner product sum_rho chi_l chi_m chi_n / z_rho.
"""

import logging
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Dict, Iterator, Tuple

import numpy as np

from ..errors import CharacterTableError, DomainError
from .characters import CharacterTable
from .partitions import Partition

logger = logging.getLogger(__name__)

UNIT_ROUNDOFF = 2.0 ** -53
FLOAT_EXACT_LIMIT = 2 ** 53


@dataclass(frozen=True)
class Triple:
    """(lambda, mu, nu), all partitions of the same n."""
    lam: Partition
    mu: Partition
    nu: Partition

    def __post_init__(self):
        if not (self.lam.n == self.mu.n == self.nu.n):
            raise DomainError(
                f"triple sizes differ: {self.lam.n}, {self.mu.n}, {self.nu.n}"
            )

    @property
    def n(self) -> int:
        return self.lam.n

    def __iter__(self) -> Iterator[Partition]:
        return iter((self.lam, self.mu, self.nu))

    def __str__(self) -> str:
        return f"(({self.lam}),({self.mu}),({self.nu}))"

    def sorted(self) -> "Triple":
        """Representative with lambda >= mu >= nu lexicographically."""
        lam, mu, nu = sorted(self, key=lambda p: p.parts, reverse=True)
        return Triple(lam, mu, nu)

    def permutations(self) -> Iterator["Triple"]:
        for lam, mu, nu in permutations(self):
            yield Triple(lam, mu, nu)

    def depths(self) -> Tuple[int, int, int]:
        return self.lam.depth, self.mu.depth, self.nu.depth


def _check_table(n: int, table: CharacterTable) -> None:
    if n != table.n:
        raise DomainError(f"size mismatch: partitions of {n}, character table of S_{table.n}")


def _divide_exact(total: int, n: int) -> int:
    quotient, remainder = divmod(total, factorial(n))
    if remainder:
        raise CharacterTableError(
            f"character sum {total} is not divisible by {n}!; the table is corrupt"
        )
    if quotient < 0:
        raise CharacterTableError(f"negative Kronecker coefficient {quotient}")
    return quotient


def kron(t: Triple, table: CharacterTable) -> int:
    """Exact g(t) = sum_rho (n!/z_rho) chi_l chi_m chi_n / n!."""
    _check_table(t.n, table)
    order = table.order
    values = table.exact_values
    a = values[order.index(t.lam)]
    b = values[order.index(t.mu)]
    c = values[order.index(t.nu)]
    total = sum(
        size * int(x) * int(y) * int(z)
        for size, x, y, z in zip(table.class_sizes, a, b, c)
    )
    return _divide_exact(total, t.n)


def kron_row(lam: Partition, mu: Partition, table: CharacterTable) -> Dict[Partition, int]:
    """Full decomposition of S_lambda (x) S_mu as {nu: g}."""
    if lam.n != mu.n:
        raise DomainError(f"size mismatch: |lambda| = {lam.n}, |mu| = {mu.n}")
    _check_table(lam.n, table)
    order = table.order
    values = table.exact_values
    sizes = np.array(table.class_sizes, dtype=object)
    weighted = sizes * values[order.index(lam)] * values[order.index(mu)]
    totals = values.dot(weighted)
    return {nu: _divide_exact(int(total), lam.n) for nu, total in zip(order, totals)}


def depth_admissible(t: Triple) -> bool:
    """|d_l - d_m| <= d_n <= d_l + d_m, necessary for g(t) != 0.

    The two inequalities are the triangle inequality on the depths, so the
    answer does not depend on the order of the triple.
    """
    d_lam, d_mu, d_nu = t.depths()
    return abs(d_lam - d_mu) <= d_nu <= d_lam + d_mu


def check_symmetry(t: Triple, table: CharacterTable) -> bool:
    """True iff all six orderings of t give the same coefficient."""
    values = {kron(p, table) for p in t.permutations()}
    return len(values) == 1


class KroneckerEvaluator:
    """Batched g(lambda_i, mu, nu) blocks for exhaustive scans.

    The fast path evaluates X diag(chi_i / z) X^T in float64. Because
    sum_rho |chi_l chi_m chi_n| / z_rho <= max f^nu, the rounding error of
    every entry is below ``error_bound``; when that bound is under a quarter
    the rounded matrix is the exact one. Otherwise (or if an entry lands
    farther than the bound from an integer) the block is recomputed with
    Python integers.
    """

    CERTIFIED_BOUND = 0.25

    def __init__(self, table: CharacterTable):
        self.table = table
        self.n = table.n
        size = len(table)
        biggest = max(abs(int(v)) for v in table.exact_values.ravel())
        self.error_bound = 2.0 * (size + 3) * UNIT_ROUNDOFF * float(biggest)
        self.use_fast_path = (
            biggest < FLOAT_EXACT_LIMIT and self.error_bound < self.CERTIFIED_BOUND
        )
        if self.use_fast_path:
            self._floats = table.exact_values.astype(np.float64)
            self._inv_z = 1.0 / np.array([float(z) for z in table.centralizer_orders])
        else:
            logger.info(
                "float fast path not certified for n=%d (bound %.3g); using exact integers",
                self.n, self.error_bound,
            )
        self._sizes = np.array(table.class_sizes, dtype=object)

    def block(self, i: int) -> np.ndarray:
        """g(lambda_i, lambda_j, lambda_k) for j, k >= i, as an int64 matrix."""
        if self.use_fast_path:
            tail = self._floats[i:]
            weights = self._floats[i] * self._inv_z
            approx = (tail * weights) @ tail.T
            rounded = np.rint(approx)
            if np.abs(approx - rounded).max(initial=0.0) <= self.error_bound:
                return rounded.astype(np.int64)
            logger.warning("fast path missed integrality for row %d; recomputing exactly", i)
        return self._exact_block(i)

    def pair_column(self, i: int) -> np.ndarray:
        """g(lambda_i, lambda_i, nu) for every nu, as an int64 vector."""
        if self.use_fast_path:
            row = self._floats[i]
            approx = self._floats @ (row * row * self._inv_z)
            rounded = np.rint(approx)
            if np.abs(approx - rounded).max(initial=0.0) <= self.error_bound:
                return rounded.astype(np.int64)
            logger.warning("fast path missed integrality for pair %d; recomputing exactly", i)
        values = self.table.exact_values
        totals = values.dot(self._sizes * values[i] * values[i])
        return np.array([_divide_exact(int(t), self.n) for t in totals], dtype=np.int64)

    def _exact_block(self, i: int) -> np.ndarray:
        values = self.table.exact_values
        tail = values[i:]
        weighted = tail * (self._sizes * values[i])
        totals = weighted.dot(tail.T)
        out = np.empty(totals.shape, dtype=np.int64)
        for idx, total in np.ndenumerate(totals):
            out[idx] = _divide_exact(int(total), self.n)
        return out
