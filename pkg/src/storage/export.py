"""Deterministic JSON and CSV exports of scans, loadings and histograms."""

import csv
import json
import math
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..combinatorics.partitions import format_partition
from ..loadings.loadings import LoadingTable
from ..stats.histogram import Histogram
from ..thresholds.scan import ScanResult, triple_to_list

DECIMALS = 4


def _round(value: Optional[float]) -> Optional[float]:
    if value is None or not math.isfinite(value):
        return None
    return round(float(value), DECIMALS)


def scan_to_dict(result: ScanResult) -> Dict[str, object]:
    th = result.thresholds
    return {
        "n": th.n,
        "r_star": _round(th.r_star),
        "b_star": _round(th.b_star),
        "argmin_r": triple_to_list(th.argmin_r),
        "argmin_b": triple_to_list(th.argmin_b),
        "provenance": th.provenance,
        "mode": th.mode,
        "total_triples": result.total_triples,
        "nonzero_count": result.nonzero_count,
        "zero_count": result.zero_count,
        "r_below_count": result.r_below_count,
        "b_below_count": result.b_below_count,
        "depth_violating_count": result.depth_violating_count,
        "min_r_depth_violating": _round(result.min_r_depth_violating),
        "ties_r": [triple_to_list(t) for t in result.ties_r],
        "ties_b": [triple_to_list(t) for t in result.ties_b],
        "ranges": {
            name: {q: [_round(low), _round(high)] for q, (low, high) in per_q.items()}
            for name, per_q in result.ranges.items()
        },
        "fits": {name: fit.as_dict() for name, fit in result.fits.items()},
    }


def dumps(data: Dict[str, object]) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def histogram_rows(h: Histogram) -> List[List[str]]:
    """Header plus one row per bin; class columns only when the histogram has classes."""
    classes = [name for name in ("nonzero", "zero", "depth_violating") if name in h.class_counts]
    header = ["bin_left", "bin_right"] + ([f"count_{name}" for name in classes] or ["count"])
    rows = [header]
    for i, (left, right, per_class) in enumerate(h.rows()):
        counts = [str(per_class[name]) for name in classes] if classes else [str(int(h.counts[i]))]
        rows.append([f"{left:.{DECIMALS}f}", f"{right:.{DECIMALS}f}"] + counts)
    return rows


def write_histogram_csv(h: Histogram, path: Union[Path, str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(histogram_rows(h))
    return path


def loadings_rows(table: LoadingTable) -> List[List[str]]:
    """Appendix layout: ``partition,r_loading,b_loading`` with 4 decimals."""
    rows = [["partition", "r_loading", "b_loading"]]
    for lam, r, b in table.rows():
        rows.append([format_partition(lam), f"{r:.{DECIMALS}f}", f"{b:.{DECIMALS}f}"])
    return rows


def write_loadings_csv(table: LoadingTable, path: Union[Path, str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(loadings_rows(table))
    return path


def export_scan(result: ScanResult, out_dir: Union[Path, str], stem: Optional[str] = None) -> List[Path]:
    """
    Write the scan JSON and one histogram CSV per loading.

    Args:
        result: Finished scan
        out_dir: Destination directory (created if needed)
        stem: File name stem (default ``scan_n=<n>``)

    Returns:
        Paths written, JSON first
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = stem or f"scan_n={result.n}"
    json_path = out_dir / f"{stem}.json"
    json_path.write_text(dumps(scan_to_dict(result)), encoding="utf-8")
    written = [json_path]
    for q in ("r", "b"):
        written.append(write_histogram_csv(result.histograms[q], out_dir / f"{stem}_{q}_hist.csv"))
    return written
