"""Power iteration from e_1 for the dominant eigenvector."""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Union

import numpy as np
from scipy.sparse.linalg import LinearOperator

from ..errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

MatVec = Union[LinearOperator, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class Converge:
    """Stop once the L-infinity change between iterates drops below ``tol``."""
    tol: float = 1e-13
    max_iters: int = 10000

    @property
    def label(self) -> str:
        return f"tol={self.tol:g}"


@dataclass(frozen=True)
class Fixed:
    """Run exactly ``iterations`` steps (the reference code uses 21)."""
    iterations: int = 21

    @property
    def label(self) -> str:
        return f"iters={self.iterations}"


IterationMode = Union[Converge, Fixed]


@dataclass
class PowerIterationResult:
    vector: np.ndarray
    iterations: int
    residual: float
    eigenvalue: float
    trace: Optional[List[np.ndarray]] = None


def _as_callable(matvec: MatVec) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(matvec, LinearOperator):
        return matvec.matvec
    return matvec


def power_iteration(
    matvec: MatVec,
    dim: int,
    mode: IterationMode = Converge(),
    record: bool = False,
) -> PowerIterationResult:
    """
    Iterate x_{k+1} = M x_k / ||M x_k||_2 starting at x_0 = e_1.

    Args:
        matvec: Operator or callable computing M x
        dim: Dimension of M
        mode: ``Converge(tol, max_iters)`` or ``Fixed(k)``
        record: Keep every iterate in ``trace``

    Returns:
        PowerIterationResult with the unit vector, the number of steps,
        the residual ||M x - (x^T M x) x||_inf and the Rayleigh quotient.

    Raises:
        ConvergenceError: on a zero iterate, a sign flip of the Rayleigh
            quotient, or when converge mode exhausts ``max_iters``.
    """
    if dim < 1:
        raise DomainError(f"dimension must be positive, got {dim}")
    if isinstance(mode, Fixed) and mode.iterations < 1:
        raise DomainError(f"fixed mode needs at least one iteration, got {mode.iterations}")

    apply = _as_callable(matvec)
    x = np.zeros(dim, dtype=np.float64)
    x[0] = 1.0
    trace: Optional[List[np.ndarray]] = [] if record else None
    previous_quotient = 0.0
    iterations = 0

    while True:
        y = np.asarray(apply(x), dtype=np.float64).reshape(-1)
        quotient = float(x @ y)
        if quotient * previous_quotient < 0:
            raise ConvergenceError(
                f"Rayleigh quotient changed sign at step {iterations} "
                f"({previous_quotient:.6g} -> {quotient:.6g}); iteration oscillates"
            )
        if quotient != 0.0:
            previous_quotient = quotient

        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            raise ConvergenceError(f"iterate collapsed to zero at step {iterations}")
        x_next = y / norm
        change = float(np.abs(x_next - x).max())
        x = x_next
        iterations += 1
        if trace is not None:
            trace.append(x.copy())

        if isinstance(mode, Fixed):
            if iterations >= mode.iterations:
                break
        else:
            if change < mode.tol:
                break
            if iterations >= mode.max_iters:
                raise ConvergenceError(
                    f"no convergence after {mode.max_iters} iterations "
                    f"(last change {change:.3g}, tol {mode.tol:g})"
                )

    y = np.asarray(apply(x), dtype=np.float64).reshape(-1)
    eigenvalue = float(x @ y)
    residual = float(np.abs(y - eigenvalue * x).max())
    logger.debug("power iteration: %d steps, residual %.3g", iterations, residual)
    return PowerIterationResult(
        vector=x,
        iterations=iterations,
        residual=residual,
        eigenvalue=eigenvalue,
        trace=trace,
    )
