"""Histograms of loadings, including exact all-triple histograms."""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, Tuple, Union

import numpy as np

from ..errors import DomainError

MIN_AUTO_BINS = 20
MAX_AUTO_BINS = 200


@dataclass(frozen=True)
class Auto:
    """Freedman-Diaconis width, clamped to 20..200 bins."""


@dataclass(frozen=True)
class Count:
    bins: int


@dataclass(frozen=True)
class Width:
    width: float


Binning = Union[Auto, Count, Width]


@dataclass
class Histogram:
    """Bin edges and exact integer counts.

    ``class_counts`` holds per-class counts (``nonzero``, ``zero``,
    ``depth_violating``); ``counts`` is their sum over the disjoint classes,
    or the plain counts for an unclassified histogram.
    """
    bin_edges: np.ndarray
    counts: np.ndarray
    class_counts: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.counts) != len(self.bin_edges) - 1:
            raise DomainError(
                f"{len(self.counts)} counts for {len(self.bin_edges) - 1} bins"
            )
        if not (np.diff(self.bin_edges) > 0).all():
            raise DomainError("bin edges must be strictly increasing")

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def bins(self) -> int:
        return len(self.counts)

    def rows(self) -> Iterator[Tuple[float, float, Dict[str, int]]]:
        for i in range(self.bins):
            per_class = {name: int(c[i]) for name, c in self.class_counts.items()}
            yield float(self.bin_edges[i]), float(self.bin_edges[i + 1]), per_class


def fixed_grid(low: float = 0.0, high: float = 300.0, bins: int = 150) -> np.ndarray:
    """Shared edges so histograms of different classes line up."""
    if bins < 1:
        raise DomainError(f"need at least one bin, got {bins}")
    if not high > low:
        raise DomainError(f"empty range [{low}, {high}]")
    return np.linspace(low, high, bins + 1)


def _auto_edges(values: np.ndarray) -> np.ndarray:
    low, high = float(values.min()), float(values.max())
    q75, q25 = np.percentile(values, [75, 25])
    width = 2.0 * float(q75 - q25) * values.size ** (-1.0 / 3.0)
    if width > 0:
        bins = int(math.ceil((high - low) / width))
    else:
        bins = MIN_AUTO_BINS
    bins = min(max(bins, MIN_AUTO_BINS), MAX_AUTO_BINS)
    return np.linspace(low, high, bins + 1)


def _edges(values: np.ndarray, binning: Binning) -> np.ndarray:
    low, high = float(values.min()), float(values.max())
    if high == low:
        return np.array([low - 0.5, low + 0.5])
    if isinstance(binning, Auto):
        return _auto_edges(values)
    if isinstance(binning, Count):
        if binning.bins < 1:
            raise DomainError(f"need at least one bin, got {binning.bins}")
        return np.linspace(low, high, binning.bins + 1)
    if isinstance(binning, Width):
        if not binning.width > 0:
            raise DomainError(f"bin width must be positive, got {binning.width}")
        bins = max(1, int(math.ceil((high - low) / binning.width - 1e-12)))
        # the top edge must cover the maximum despite rounding in the division
        while low + binning.width * bins < high:
            bins += 1
        return low + binning.width * np.arange(bins + 1)
    raise DomainError(f"unknown binning {binning!r}")


def bin_counts(values, edges: np.ndarray, weights=None) -> np.ndarray:
    """Integer counts on ``edges``; the last bin is closed on the right."""
    values = np.asarray(values, dtype=np.float64).ravel()
    counts, _ = np.histogram(values, bins=edges, weights=weights)
    return np.rint(counts).astype(np.int64)


def histogram(values, binning: Binning = Auto(), weights=None) -> Histogram:
    """
    Histogram of ``values`` covering [min, max].

    Raises:
        DomainError: on empty input or a nonpositive width
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise DomainError("histogram of an empty sample")
    edges = _edges(values, binning)
    return Histogram(edges, bin_counts(values, edges, weights))


def classified_histogram(edges: np.ndarray, class_counts: Dict[str, np.ndarray]) -> Histogram:
    """Histogram over ``nonzero``/``zero`` classes plus the depth-violating subset of zero."""
    nonzero = class_counts.get("nonzero", np.zeros(len(edges) - 1, dtype=np.int64))
    zero = class_counts.get("zero", np.zeros(len(edges) - 1, dtype=np.int64))
    return Histogram(np.asarray(edges), nonzero + zero, dict(class_counts))


def _pair_sums(values: np.ndarray) -> np.ndarray:
    return np.sort((values[:, None] + values[None, :]).ravel())


def triple_histogram(values, edges: np.ndarray) -> Histogram:
    """Exact histogram of x_l + x_m + x_n over all p^3 ordered triples.

    Pair sums are sorted once; each third coordinate then needs one
    ``searchsorted`` per edge, so no triple is materialized.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise DomainError("triple histogram of an empty sample")
    edges = np.asarray(edges, dtype=np.float64)
    pairs = _pair_sums(values)
    cumulative = np.zeros(len(edges), dtype=np.int64)
    for x in values:
        shifted = edges - x
        below = np.searchsorted(pairs, shifted[:-1], side="left")
        last = np.searchsorted(pairs, shifted[-1], side="right")
        cumulative[:-1] += below
        cumulative[-1] += last
    counts = np.diff(cumulative)
    return Histogram(edges, counts)


def count_triples_below(values, threshold: float) -> int:
    """Number of ordered triples with x_l + x_m + x_n < threshold."""
    values = np.asarray(values, dtype=np.float64).ravel()
    pairs = _pair_sums(values)
    return int(np.searchsorted(pairs, threshold - values, side="left").sum())


def is_unimodal(counts, slack: float = 0.0) -> bool:
    """True if counts rise to a single peak and then fall.

    ``slack`` is the tolerated dip against the trend, as a fraction of the
    peak count, so sampling noise in sparse bins does not count as a mode.
    """
    counts = np.asarray(counts, dtype=np.float64)
    if counts.size == 0:
        return False
    peak = int(np.argmax(counts))
    allowance = slack * float(counts[peak])
    running = counts[0]
    for c in counts[1:peak + 1]:
        if c < running - allowance:
            return False
        running = max(running, c)
    running = counts[peak]
    for c in counts[peak + 1:]:
        if c > running + allowance:
            return False
        running = min(running, c)
    return True

