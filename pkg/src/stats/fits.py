"""Method-of-moments normal and gamma fits for loading distributions."""

import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from scipy import stats

from ..errors import DomainError


@dataclass(frozen=True)
class FitParams:
    """``params`` is (mean, stddev) for normal and (shape, scale) for gamma."""
    family: str
    params: Tuple[float, float]
    sample_mean: float
    sample_variance: float
    degenerate: bool = False

    def pdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if self.degenerate:
            return np.zeros_like(x)
        if self.family == "normal":
            mean, sd = self.params
            return stats.norm.pdf(x, loc=mean, scale=sd)
        shape, scale = self.params
        return stats.gamma.pdf(x, a=shape, scale=scale)

    def expected_counts(self, edges: np.ndarray, total: float) -> Tuple[np.ndarray, np.ndarray]:
        """Curve for a histogram overlay: bin centers and density scaled to counts."""
        edges = np.asarray(edges, dtype=np.float64)
        centers = 0.5 * (edges[:-1] + edges[1:])
        widths = np.diff(edges)
        return centers, self.pdf(centers) * widths * total

    def as_dict(self) -> Dict[str, object]:
        names = ("mean", "stddev") if self.family == "normal" else ("shape", "scale")
        out: Dict[str, object] = {"family": self.family}
        out.update({name: round(float(value), 6) for name, value in zip(names, self.params)})
        out["sample_mean"] = round(self.sample_mean, 6)
        out["sample_variance"] = round(self.sample_variance, 6)
        if self.degenerate:
            out["degenerate"] = True
        return out


def fit_normal(mean: float, variance: float) -> FitParams:
    """normal(mean, sqrt(variance)); zero variance is flagged degenerate."""
    if variance < 0:
        raise DomainError(f"negative variance {variance}")
    return FitParams(
        family="normal",
        params=(float(mean), math.sqrt(variance)),
        sample_mean=float(mean),
        sample_variance=float(variance),
        degenerate=variance == 0,
    )


def fit_gamma(mean: float, variance: float) -> FitParams:
    """shape = mean^2 / variance, scale = variance / mean."""
    if mean <= 0:
        raise DomainError(f"gamma fit needs a positive mean, got {mean}")
    if variance <= 0:
        raise DomainError(f"gamma fit needs a positive variance, got {variance}")
    return FitParams(
        family="gamma",
        params=(mean * mean / variance, variance / mean),
        sample_mean=float(mean),
        sample_variance=float(variance),
    )
