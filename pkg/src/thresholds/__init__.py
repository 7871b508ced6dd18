from .scan import ScanOptions, ScanResult, Thresholds, check_budget, scan
from .classify import Verdict, VerdictKind, Witness, classify
from .conjectures import (
    conjectured_b_star,
    conjectured_b_star_pairs,
    conjectured_r_star,
    conjectured_thresholds,
    depth_filter_min_r,
)

__all__ = [
    "ScanOptions",
    "ScanResult",
    "Thresholds",
    "check_budget",
    "scan",
    "Verdict",
    "VerdictKind",
    "Witness",
    "classify",
    "conjectured_b_star",
    "conjectured_b_star_pairs",
    "conjectured_r_star",
    "conjectured_thresholds",
    "depth_filter_min_r",
]
