"""Exhaustive scan of all triples for the thresholds r* and b*.

Only sorted representatives lambda >= mu >= nu are evaluated (indices
i <= j <= k in descending lex order); each carries its orbit size 1, 3 or 6
so every count is over all p(n)^3 ordered triples.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from ..combinatorics.characters import CharacterTable
from ..combinatorics.kronecker import KroneckerEvaluator, Triple
from ..combinatorics.partitions import PartitionSet, count_partitions, format_partition, parse_partition
from ..errors import CharacterTableError, DomainError, ResourceBudgetError
from ..loadings.loadings import LoadingTable
from ..stats.fits import FitParams, fit_gamma, fit_normal
from ..stats.histogram import Histogram, bin_counts, classified_histogram, count_triples_below, fixed_grid
from ..stats.moments import MomentAccumulator, moments, triple_moments

logger = logging.getLogger(__name__)

CLASSES = ("nonzero", "zero", "depth_violating")
QUANTITIES = ("r", "b")

IndexTriple = Tuple[int, int, int]


@dataclass(frozen=True)
class ScanOptions:
    threads: int = 1
    histogram_bins: int = 150
    tie_tolerance: float = 1e-9
    max_ties: int = 32
    exhaustive_max_n: int = 16
    allow_long: bool = False
    show_progress: bool = False


@dataclass(frozen=True)
class Thresholds:
    """r* and b* for one n; either may be None when it is not available.

    ``mode`` is the iteration-mode label of the loadings the thresholds were
    computed from; they only certify verdicts on loadings of the same mode.
    """
    n: int
    r_star: Optional[float]
    b_star: Optional[float]
    argmin_r: Optional[Triple]
    argmin_b: Optional[Triple]
    provenance: str = "exhaustive"
    mode: str = ""

    @property
    def is_exhaustive(self) -> bool:
        return self.provenance == "exhaustive"

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "r_star": self.r_star,
            "b_star": self.b_star,
            "argmin_r": triple_to_list(self.argmin_r),
            "argmin_b": triple_to_list(self.argmin_b),
            "provenance": self.provenance,
            "mode": self.mode,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "Thresholds":
        n = int(data["n"])
        return cls(
            n=n,
            r_star=data.get("r_star"),
            b_star=data.get("b_star"),
            argmin_r=triple_from_list(data.get("argmin_r"), n),
            argmin_b=triple_from_list(data.get("argmin_b"), n),
            provenance=str(data.get("provenance", "exhaustive")),
            mode=str(data.get("mode", "")),
        )


def triple_to_list(t: Optional[Triple]) -> Optional[List[str]]:
    if t is None:
        return None
    return [format_partition(p) for p in t]


def triple_from_list(items, n: int) -> Optional[Triple]:
    if not items:
        return None
    lam, mu, nu = (parse_partition(text, n) for text in items)
    return Triple(lam, mu, nu)


@dataclass
class ScanResult:
    thresholds: Thresholds
    total_triples: int
    nonzero_count: int
    zero_count: int
    r_below_count: int
    b_below_count: int
    depth_violating_count: int
    min_r_depth_violating: float
    histograms: Dict[str, Histogram]
    ties_r: Tuple[Triple, ...] = ()
    ties_b: Tuple[Triple, ...] = ()
    ranges: Dict[str, Dict[str, Tuple[float, float]]] = field(default_factory=dict)
    fits: Dict[str, FitParams] = field(default_factory=dict)
    representatives: int = 0

    @property
    def n(self) -> int:
        return self.thresholds.n


@dataclass
class _Minimum:
    value: float
    candidates: List[Tuple[float, IndexTriple]]


@dataclass
class _BlockResult:
    """Everything one lambda block contributes to the scan."""
    index: int
    representatives: int
    counts: Dict[str, int]
    weight_total: int
    min_r: Optional[_Minimum]
    min_b: Optional[_Minimum]
    min_r_violating: float
    ranges: Dict[str, Dict[str, Tuple[float, float]]]
    histograms: Dict[Tuple[str, str], np.ndarray]
    moments: Dict[Tuple[str, str], MomentAccumulator]


# read-only inputs installed once per worker process
_STATE: Dict[str, object] = {}


def _install(table: CharacterTable, r: np.ndarray, b: np.ndarray, edges: np.ndarray, tie_tolerance: float) -> None:
    _STATE["evaluator"] = KroneckerEvaluator(table)
    _STATE["r"] = r
    _STATE["b"] = b
    _STATE["depths"] = table.order.depths()
    _STATE["edges"] = edges
    _STATE["tol"] = tie_tolerance


def _minimum(values: np.ndarray, mask: np.ndarray, i: int, j: np.ndarray, k: np.ndarray, tol: float) -> Optional[_Minimum]:
    if not mask.any():
        return None
    selected = np.nonzero(mask)[0]
    best = float(values[selected].min())
    close = selected[values[selected] <= best + tol]
    return _Minimum(best, [(float(values[t]), (i, int(j[t]), int(k[t]))) for t in close])


def _scan_block(i: int) -> _BlockResult:
    evaluator: KroneckerEvaluator = _STATE["evaluator"]
    r: np.ndarray = _STATE["r"]
    b: np.ndarray = _STATE["b"]
    depths: np.ndarray = _STATE["depths"]
    edges: np.ndarray = _STATE["edges"]
    tol: float = _STATE["tol"]

    g = evaluator.block(i)
    jj, kk = np.triu_indices(g.shape[0])
    values = g[jj, kk]
    j = jj + i
    k = kk + i
    weight = np.where(j == i, np.where(k == i, 1, 3), np.where(j == k, 3, 6))

    r_values = (r[i] + r[j]) + r[k]
    b_values = (b[i] + b[j]) + b[k]
    d_i, d_j, d_k = depths[i], depths[j], depths[k]
    violating = (np.abs(d_i - d_j) > d_k) | (d_k > d_i + d_j)
    nonzero = values != 0
    if (violating & nonzero).any():
        raise CharacterTableError(f"nonzero coefficient violates the depth condition in block {i}")

    masks = {"nonzero": nonzero, "zero": ~nonzero, "depth_violating": violating}
    loadings = {"r": r_values, "b": b_values}
    counts = {name: int(weight[mask].sum()) for name, mask in masks.items()}

    ranges: Dict[str, Dict[str, Tuple[float, float]]] = {}
    histograms: Dict[Tuple[str, str], np.ndarray] = {}
    accumulators: Dict[Tuple[str, str], MomentAccumulator] = {}
    for name, mask in masks.items():
        if mask.any():
            ranges[name] = {
                q: (float(v[mask].min()), float(v[mask].max())) for q, v in loadings.items()
            }
        for q, v in loadings.items():
            histograms[(q, name)] = bin_counts(v[mask], edges, weights=weight[mask])
            acc = MomentAccumulator()
            acc.add_batch(v[mask], weight[mask])
            accumulators[(q, name)] = acc

    return _BlockResult(
        index=i,
        representatives=int(values.size),
        counts=counts,
        weight_total=int(weight.sum()),
        min_r=_minimum(r_values, nonzero, i, j, k, tol),
        min_b=_minimum(b_values, ~nonzero, i, j, k, tol),
        min_r_violating=float(r_values[violating].min()) if violating.any() else float("inf"),
        ranges=ranges,
        histograms=histograms,
        moments=accumulators,
    )


def check_budget(n: int, options: ScanOptions) -> None:
    """Refuse exhaustive scans above ``exhaustive_max_n`` unless long runs are allowed."""
    if n > options.exhaustive_max_n and not options.allow_long:
        raise ResourceBudgetError(
            f"exhaustive scan for n={n} exceeds the budget (n <= {options.exhaustive_max_n}); "
            f"pass --long to run it"
        )


def _select(minima: List[Optional[_Minimum]], tol: float, max_ties: int) -> Tuple[Optional[float], List[IndexTriple]]:
    present = [m for m in minima if m is not None]
    if not present:
        return None, []
    best = min(m.value for m in present)
    ties = sorted(
        {index for m in present for value, index in m.candidates if value <= best + tol},
        reverse=True,
    )
    return best, ties[:max_ties]


def _triple(order: PartitionSet, index: IndexTriple) -> Triple:
    i, j, k = index
    return Triple(order[i], order[j], order[k])


def _merge_ranges(blocks: List[_BlockResult]) -> Dict[str, Dict[str, Tuple[float, float]]]:
    merged: Dict[str, Dict[str, Tuple[float, float]]] = {}
    for block in blocks:
        for name, per_quantity in block.ranges.items():
            target = merged.setdefault(name, {})
            for q, (low, high) in per_quantity.items():
                if q in target:
                    old_low, old_high = target[q]
                    target[q] = (min(old_low, low), max(old_high, high))
                else:
                    target[q] = (low, high)
    return merged


def _run_blocks(table: CharacterTable, loadings: LoadingTable, edges: np.ndarray, options: ScanOptions) -> List[_BlockResult]:
    size = len(table)
    initargs = (table, loadings.r, loadings.b, edges, options.tie_tolerance)
    progress = dict(total=size, disable=not options.show_progress, desc=f"scan n={table.n}")
    if options.threads <= 1:
        _install(*initargs)
        try:
            return [_scan_block(i) for i in tqdm(range(size), **progress)]
        finally:
            _STATE.clear()
    with ProcessPoolExecutor(
        max_workers=options.threads,
        initializer=_install,
        initargs=initargs,
    ) as executor:
        # map yields in submission order, so the reduction below is deterministic
        return list(tqdm(executor.map(_scan_block, range(size)), **progress))


def scan(n: int, table: CharacterTable, loadings: LoadingTable, options: ScanOptions = ScanOptions()) -> ScanResult:
    """
    Exact r*, b* and class counts over all ordered triples of partitions of n.

    Args:
        n: Size of the partitions
        table: Character table of S_n
        loadings: Loadings for n
        options: Threads, histogram grid, tie tolerance and budget

    Returns:
        ScanResult with exhaustive thresholds

    Raises:
        DomainError: if the inputs are for different n
        ResourceBudgetError: if n is above the exhaustive budget
    """
    if table.n != n or loadings.n != n:
        raise DomainError(f"size mismatch: n={n}, character table {table.n}, loadings {loadings.n}")
    check_budget(n, options)

    size = len(table)
    edges = fixed_grid(0.0, 300.0, options.histogram_bins)
    logger.info("scanning n=%d: %d sorted triples on %d worker(s)",
                n, size * (size + 1) * (size + 2) // 6, options.threads)
    blocks = _run_blocks(table, loadings, edges, options)

    total = sum(block.weight_total for block in blocks)
    expected = count_partitions(n) ** 3
    if total != expected:
        raise CharacterTableError(f"orbit sizes sum to {total}, expected p(n)^3 = {expected}")
    counts = {name: sum(block.counts[name] for block in blocks) for name in CLASSES}

    tol = options.tie_tolerance
    r_star, ties_r = _select([block.min_r for block in blocks], tol, options.max_ties)
    b_star, ties_b = _select([block.min_b for block in blocks], tol, options.max_ties)
    order = table.order
    thresholds = Thresholds(
        n=n,
        r_star=r_star,
        b_star=b_star,
        argmin_r=_triple(order, ties_r[0]) if ties_r else None,
        argmin_b=_triple(order, ties_b[0]) if ties_b else None,
        provenance="exhaustive",
        mode=loadings.mode,
    )

    histograms = {}
    for q in QUANTITIES:
        per_class = {
            name: np.sum([block.histograms[(q, name)] for block in blocks], axis=0).astype(np.int64)
            for name in CLASSES
        }
        histograms[q] = classified_histogram(edges, per_class)

    class_moments: Dict[Tuple[str, str], MomentAccumulator] = {}
    for block in blocks:
        for key, acc in block.moments.items():
            class_moments.setdefault(key, MomentAccumulator()).merge(acc)

    fits = {
        "r": _fit(fit_normal, triple_moments(moments(loadings.r))),
        "b": _fit(fit_gamma, triple_moments(moments(loadings.b))),
    }
    nonzero_b = class_moments.get(("b", "nonzero"))
    if nonzero_b is not None and nonzero_b.count:
        fits["b_nonzero"] = _fit(fit_gamma, nonzero_b.result())

    result = ScanResult(
        thresholds=thresholds,
        total_triples=total,
        nonzero_count=counts["nonzero"],
        zero_count=counts["zero"],
        r_below_count=count_triples_below(loadings.r, r_star - tol) if r_star is not None else 0,
        b_below_count=count_triples_below(loadings.b, b_star - tol) if b_star is not None else 0,
        depth_violating_count=counts["depth_violating"],
        min_r_depth_violating=min(block.min_r_violating for block in blocks),
        histograms=histograms,
        ties_r=tuple(_triple(order, index) for index in ties_r),
        ties_b=tuple(_triple(order, index) for index in ties_b),
        ranges=_merge_ranges(blocks),
        fits=fits,
        representatives=sum(block.representatives for block in blocks),
    )
    logger.info("n=%d: r*=%s at %s, b*=%s at %s", n, r_star, thresholds.argmin_r, b_star, thresholds.argmin_b)
    return result


def _fit(fitter, m) -> FitParams:
    return fitter(m.mean, m.variance)
