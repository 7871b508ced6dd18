"""Store of computed thresholds, reused by classify."""

import json
import logging
from datetime import datetime
from typing import Dict, List, Optional

from ..errors import CacheCorruptionError
from ..thresholds.scan import Thresholds
from .cache_manager import FORMAT_VERSION, CacheManager

logger = logging.getLogger(__name__)


class ThresholdStore:
    """
    Thresholds keyed by n and iteration mode, one JSON document per n in the cache.

    Loadings computed with ``Fixed(21)`` differ from converged ones, so a
    threshold only certifies verdicts on loadings of its own mode. Within a
    mode, exhaustive results always replace conjectured ones; a conjectured
    result never overwrites an exhaustive one.
    """

    KIND = "thresholds"

    def __init__(self, cache: CacheManager):
        self.cache = cache

    def _load(self, n: int) -> Dict[str, dict]:
        """Entries for n keyed by mode label; empty when nothing is stored."""
        stored = self.cache.read(self.KIND, n)
        if stored is None:
            return {}
        try:
            data = json.loads(stored[1])
        except json.JSONDecodeError as e:
            raise CacheCorruptionError(f"threshold store entry for n={n} is not valid JSON: {e}") from e
        entries = data.get("entries") if isinstance(data, dict) else None
        if not isinstance(entries, dict):
            raise CacheCorruptionError(f"threshold store entry for n={n} has no entries")
        return entries

    def _save(self, n: int, entries: Dict[str, dict]) -> None:
        body = json.dumps({"version": FORMAT_VERSION, "entries": entries}, indent=2, sort_keys=True) + "\n"
        self.cache.write(self.KIND, n, f"thresholds n={n} version={FORMAT_VERSION}", body)

    @staticmethod
    def _decode(n: int, entry: dict) -> Thresholds:
        try:
            return Thresholds.from_dict(entry["thresholds"])
        except (KeyError, TypeError, ValueError) as e:
            raise CacheCorruptionError(f"threshold store entry for n={n} is malformed: {e}") from e

    def add(self, thresholds: Thresholds, summary: Optional[Dict[str, object]] = None) -> bool:
        """
        Store thresholds under their n and mode.

        Args:
            thresholds: Computed thresholds
            summary: Extra scan figures (counts) to keep alongside

        Returns:
            False if an exhaustive entry was kept instead of a conjectured one
        """
        n, mode = thresholds.n, thresholds.mode
        entries = self._load(n)
        existing = self._decode(n, entries[mode]) if mode in entries else None
        if existing is not None and existing.is_exhaustive and not thresholds.is_exhaustive:
            logger.info("keeping exhaustive thresholds for n=%d (%s)", n, mode or "unknown mode")
            return False
        entries[mode] = {
            "updated": datetime.now().isoformat(),
            "thresholds": thresholds.to_dict(),
            "summary": summary or {},
        }
        self._save(n, entries)
        return True

    def find(self, n: int, mode: Optional[str] = None) -> Optional[Thresholds]:
        """
        Thresholds for n computed under ``mode``.

        With ``mode`` None any entry will do, exhaustive ones first.
        """
        entries = self._load(n)
        if mode is not None:
            return self._decode(n, entries[mode]) if mode in entries else None
        found = [self._decode(n, entries[m]) for m in sorted(entries)]
        found.sort(key=lambda th: not th.is_exhaustive)
        return found[0] if found else None

    def summary(self, n: int, mode: Optional[str] = None) -> Dict[str, object]:
        entries = self._load(n)
        if mode is None:
            th = self.find(n)
            mode = th.mode if th is not None else None
        entry = entries.get(mode) if mode is not None else None
        return dict(entry.get("summary", {})) if entry else {}

    def list_thresholds(self) -> List[dict]:
        """n, mode, provenance and update time of every stored entry."""
        listed = []
        for cached in self.cache.list_entries(self.KIND):
            if not cached.is_current:
                continue
            for mode, entry in sorted(self._load(cached.n).items()):
                th = entry.get("thresholds", {})
                listed.append({
                    "n": cached.n,
                    "mode": mode,
                    "provenance": th.get("provenance", "unknown"),
                    "r_star": th.get("r_star"),
                    "b_star": th.get("b_star"),
                    "updated": entry.get("updated", "unknown"),
                })
        return listed

    def remove(self, n: int) -> bool:
        return self.cache.delete(self.KIND, n) > 0
