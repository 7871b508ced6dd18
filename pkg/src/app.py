#!/usr/bin/env python3
"""kronload - loadings of partitions and Kronecker coefficient thresholds.

``KronloadApp`` ties configuration, the on-disk cache and the computations
together; the command line in ``cli.py`` is a thin layer over it.
"""

import logging
import sys
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np

from .combinatorics.characters import CharacterTable, build_table
from .config import Config
from .errors import DomainError
from .loadings.loadings import LoadingTable, compute_loadings, compute_r_loadings
from .loadings.power_iteration import Converge, IterationMode
from .storage.cache_manager import CacheManager
from .storage.threshold_store import ThresholdStore
from .thresholds.conjectures import conjectured_thresholds
from .thresholds.scan import ScanOptions, ScanResult, Thresholds, check_budget, scan

logger = logging.getLogger(__name__)


def check_dependencies():
    """Check if required dependencies are installed."""
    missing = []

    try:
        import numpy  # noqa: F401
    except ImportError:
        missing.append("numpy")

    try:
        import scipy  # noqa: F401
    except ImportError:
        missing.append("scipy")

    try:
        import matplotlib  # noqa: F401
    except ImportError:
        missing.append("matplotlib")

    try:
        import tqdm  # noqa: F401
    except ImportError:
        missing.append("tqdm")

    if missing:
        print("Missing required dependencies:", file=sys.stderr)
        for dep in missing:
            print(f"  - {dep}", file=sys.stderr)
        print("\nInstall with: pip install -r requirements.txt", file=sys.stderr)
        sys.exit(1)


class KronloadApp:
    """Character tables, loadings and thresholds, cached on disk and in memory."""

    def __init__(
        self,
        config: Optional[Config] = None,
        cache_dir: Optional[Union[Path, str]] = None,
        threads: Optional[int] = None,
        mode: Optional[IterationMode] = None,
        allow_long: bool = False,
        show_progress: bool = False,
        use_cache: bool = True,
    ):
        self.config = config or Config()
        self.cache = CacheManager(cache_dir or self.config.cache_dir)
        self.store = ThresholdStore(self.cache)
        self.threads = threads or self.config.threads
        self.mode = mode or Converge(self.config.tolerance, self.config.max_iterations)
        self.allow_long = allow_long
        self.show_progress = show_progress
        self.use_cache = use_cache

        self._tables: Dict[int, CharacterTable] = {}
        self._loadings: Dict[int, LoadingTable] = {}
        self._scans: Dict[int, ScanResult] = {}

    def scan_options(self) -> ScanOptions:
        return ScanOptions(
            threads=self.threads,
            histogram_bins=self.config.histogram_bins,
            tie_tolerance=self.config.tie_tolerance,
            exhaustive_max_n=self.config.exhaustive_max_n,
            allow_long=self.allow_long,
            show_progress=self.show_progress,
        )

    def character_table(self, n: int) -> CharacterTable:
        """Character table of S_n from memory, the cache, or a fresh build."""
        if n in self._tables:
            return self._tables[n]
        table = self.cache.load_chartable(n) if self.use_cache else None
        if table is None:
            table = build_table(
                n,
                threads=self.threads,
                max_entries=None if self.allow_long else self.config.chartable_max_entries,
                show_progress=self.show_progress,
            )
            if self.use_cache:
                self.cache.save_chartable(table)
        else:
            logger.info("loaded character table for n=%d from cache", n)
        self._tables[n] = table
        return table

    def loadings(self, n: int) -> LoadingTable:
        """r- and b-loadings for n, computed with this app's iteration mode."""
        if n in self._loadings:
            return self._loadings[n]
        table = self.cache.load_loadings(n, self.mode.label) if self.use_cache else None
        if table is None:
            table = compute_loadings(n, self.mode, self.config.difference_block_rows)
            if self.use_cache:
                self.cache.save_loadings(table)
        self._loadings[n] = table
        return table

    def r_loadings(self, n: int) -> np.ndarray:
        """r-loadings alone, without the O(p(n)^2) difference matrix."""
        if n in self._loadings:
            return self._loadings[n].r
        if self.use_cache:
            cached = self.cache.load_loadings(n, self.mode.label)
            if cached is not None:
                self._loadings[n] = cached
                return cached.r
        r, _ = compute_r_loadings(n, self.mode)
        return r

    def scan(self, n: int) -> ScanResult:
        """Exhaustive scan; the thresholds are stored for later classify runs."""
        if n in self._scans:
            return self._scans[n]
        options = self.scan_options()
        check_budget(n, options)
        result = scan(n, self.character_table(n), self.loadings(n), options)
        self.store.add(result.thresholds, {
            "total_triples": result.total_triples,
            "nonzero_count": result.nonzero_count,
            "zero_count": result.zero_count,
            "r_below_count": result.r_below_count,
            "b_below_count": result.b_below_count,
        })
        self._scans[n] = result
        return result

    def exhaustive_thresholds(self, n: int) -> Thresholds:
        """Stored exhaustive thresholds for this iteration mode, scanning when there are none."""
        stored = self.store.find(n, self.mode.label) if self.use_cache else None
        if stored is not None and stored.is_exhaustive:
            return stored
        return self.scan(n).thresholds

    def thresholds(self, n: int) -> Thresholds:
        """Best thresholds available without an exhaustive scan.

        Stored results for this iteration mode first; otherwise the
        conjectured values that apply to n, which classify treats as advisory.
        """
        stored = self.store.find(n, self.mode.label) if self.use_cache else None
        if stored is not None:
            return stored
        table = self._tables.get(n)
        try:
            th = conjectured_thresholds(n, self.loadings(n), table)
        except DomainError as e:
            raise DomainError(
                f"no thresholds stored for n={n} and {e}; run `scan --n {n}` first"
            ) from e
        if self.use_cache:
            self.store.add(th)
        return th


def main():
    """Main entry point."""
    check_dependencies()

    from .cli import run
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
