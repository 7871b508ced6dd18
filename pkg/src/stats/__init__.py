from .moments import MomentAccumulator, Moments, moments, triple_moments
from .histogram import (
    Auto,
    Binning,
    Count,
    Histogram,
    Width,
    bin_counts,
    classified_histogram,
    count_triples_below,
    fixed_grid,
    histogram,
    is_unimodal,
    triple_histogram,
)
from .fits import FitParams, fit_gamma, fit_normal

__all__ = [
    "MomentAccumulator",
    "Moments",
    "moments",
    "triple_moments",
    "Auto",
    "Binning",
    "Count",
    "Histogram",
    "Width",
    "bin_counts",
    "classified_histogram",
    "count_triples_below",
    "fixed_grid",
    "histogram",
    "is_unimodal",
    "triple_histogram",
    "FitParams",
    "fit_gamma",
    "fit_normal",
]
