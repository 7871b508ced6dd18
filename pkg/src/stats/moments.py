"""Streaming weighted mean and variance."""

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

import numpy as np

from ..errors import DomainError

Number = Union[int, float]


class Moments(NamedTuple):
    mean: float
    variance: float
    count: Number


@dataclass
class MomentAccumulator:
    """Weighted Welford accumulator; ``variance`` is the population variance.

    Batches and other accumulators are merged with the pairwise update, so
    per-worker accumulators can be combined in any grouping.
    """
    count: Number = 0
    mean: float = 0.0
    m2: float = 0.0

    def add(self, value: float, weight: Number = 1) -> None:
        if weight < 0:
            raise DomainError(f"negative weight {weight}")
        if weight == 0:
            return
        self.count += weight
        delta = value - self.mean
        self.mean += (weight / self.count) * delta
        self.m2 += weight * delta * (value - self.mean)

    def add_batch(self, values, weights=None) -> None:
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.size == 0:
            return
        if weights is None:
            weights = np.ones_like(values)
        else:
            weights = np.asarray(weights, dtype=np.float64).ravel()
            if weights.shape != values.shape:
                raise DomainError(f"weights shape {weights.shape} != values shape {values.shape}")
            if (weights < 0).any():
                raise DomainError("negative weight in batch")
        total = float(weights.sum())
        if total == 0:
            return
        mean = float(np.dot(weights, values) / total)
        m2 = float(np.dot(weights, (values - mean) ** 2))
        count = int(round(total)) if float(total).is_integer() else total
        self.merge(MomentAccumulator(count, mean, m2))

    def merge(self, other: "MomentAccumulator") -> None:
        if other.count == 0:
            return
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean, other.m2
            return
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean += delta * (other.count / total)
        self.m2 += other.m2 + delta * delta * (self.count * other.count / total)
        self.count = total

    @property
    def variance(self) -> float:
        if self.count == 0:
            raise DomainError("variance of an empty sample")
        return self.m2 / self.count

    def result(self) -> Moments:
        if self.count == 0:
            raise DomainError("moments of an empty sample")
        return Moments(self.mean, max(self.variance, 0.0), self.count)


def moments(values: Iterable[float], weights: Optional[Iterable[Number]] = None) -> Moments:
    """(mean, population variance, count) in one pass.

    Raises:
        DomainError: on empty input
    """
    acc = MomentAccumulator()
    if weights is None and not isinstance(values, np.ndarray):
        for value in values:
            acc.add(float(value))
    else:
        acc.add_batch(
            values if isinstance(values, np.ndarray) else np.asarray(list(values), dtype=np.float64),
            None if weights is None else np.asarray(list(weights), dtype=np.float64),
        )
    return acc.result()


def triple_moments(partition: Moments) -> Moments:
    """Moments of x_l + x_m + x_n under the uniform measure on ordered triples.

    The three coordinates are independent and identically distributed, so
    mean and variance both triple and the count is cubed.
    """
    return Moments(3.0 * partition.mean, 3.0 * partition.variance, partition.count ** 3)
