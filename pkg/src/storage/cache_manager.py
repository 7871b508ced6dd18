"""On-disk cache of character tables, loadings and thresholds."""

import csv
import hashlib
import io
import logging
import os
import re
import tempfile
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..combinatorics.characters import CharacterTable
from ..combinatorics.partitions import enumerate_partitions, format_partition, parse_partition
from ..errors import CacheCorruptionError, DomainError
from ..loadings.loadings import LoadingTable, loading_table_from_arrays

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

_NAME = re.compile(r"^n=(\d+)\.v(\d+)\.(\w+)$")


@dataclass
class CacheEntry:
    """One cached artifact, ``<cache>/<kind>/n=<n>.v<version>.<ext>``."""
    kind: str
    n: int
    format_version: int
    path: Path
    checksum: Optional[str] = None
    created: Optional[datetime] = None

    @property
    def exists(self) -> bool:
        return self.path.exists()

    @property
    def is_current(self) -> bool:
        return self.format_version == FORMAT_VERSION


class CacheManager:
    """Manages the cache directory; every file carries a sha256 of its body."""

    EXTENSIONS: Dict[str, str] = {
        "chartable": ".csv",
        "loadings": ".csv",
        "thresholds": ".json",
    }

    def __init__(self, base_dir: Optional[Union[Path, str]] = None):
        if base_dir:
            self.base_dir = Path(base_dir).expanduser()
        else:
            self.base_dir = Path.home() / ".cache" / "kronload"
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def _check_kind(self, kind: str) -> str:
        if kind not in self.EXTENSIONS:
            raise DomainError(f"unknown cache kind {kind!r}; expected one of {sorted(self.EXTENSIONS)}")
        return self.EXTENSIONS[kind]

    def path_for(self, kind: str, n: int, version: int = FORMAT_VERSION) -> Path:
        ext = self._check_kind(kind)
        return self.base_dir / kind / f"n={n}.v{version}{ext}"

    def entry(self, kind: str, n: int) -> CacheEntry:
        return CacheEntry(kind=kind, n=n, format_version=FORMAT_VERSION, path=self.path_for(kind, n))

    def list_entries(self, kind: Optional[str] = None) -> List[CacheEntry]:
        """All cached files, sorted by kind and n."""
        kinds = [kind] if kind else sorted(self.EXTENSIONS)
        entries: List[CacheEntry] = []
        for k in kinds:
            self._check_kind(k)
            directory = self.base_dir / k
            if not directory.is_dir():
                continue
            for file in directory.iterdir():
                match = _NAME.match(file.name)
                if not file.is_file() or not match:
                    continue
                entries.append(CacheEntry(
                    kind=k,
                    n=int(match.group(1)),
                    format_version=int(match.group(2)),
                    path=file,
                    checksum=self._stored_checksum(file),
                    created=datetime.fromtimestamp(file.stat().st_mtime),
                ))
        return sorted(entries, key=lambda e: (e.kind, e.n, e.format_version))

    @staticmethod
    def _stored_checksum(path: Path) -> Optional[str]:
        try:
            with open(path, "r", encoding="utf-8") as f:
                f.readline()
                line = f.readline().strip()
        except OSError:
            return None
        return line[len("# sha256="):] if line.startswith("# sha256=") else None

    def write(self, kind: str, n: int, header: str, body: str) -> CacheEntry:
        """Write atomically: temp file in the same directory, then rename."""
        path = self.path_for(kind, n)
        path.parent.mkdir(parents=True, exist_ok=True)
        checksum = hashlib.sha256(body.encode("utf-8")).hexdigest()
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                f.write(f"# {header}\n# sha256={checksum}\n")
                f.write(body)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        logger.info("cached %s for n=%d at %s", kind, n, path)
        return CacheEntry(kind, n, FORMAT_VERSION, path, checksum, datetime.now())

    def read(self, kind: str, n: int) -> Optional[Tuple[str, str]]:
        """(header, body) of a cached file, or None if absent.

        Raises:
            CacheCorruptionError: if the checksum does not match the body
        """
        path = self.path_for(kind, n)
        if not path.exists():
            return None
        text = path.read_text(encoding="utf-8")
        header, _, rest = text.partition("\n")
        checksum_line, _, body = rest.partition("\n")
        if not header.startswith("# ") or not checksum_line.startswith("# sha256="):
            raise CacheCorruptionError(f"{path}: missing header or checksum line")
        expected = checksum_line[len("# sha256="):].strip()
        actual = hashlib.sha256(body.encode("utf-8")).hexdigest()
        if actual != expected:
            raise CacheCorruptionError(f"{path}: checksum mismatch (stored {expected[:12]}..., actual {actual[:12]}...)")
        return header[2:], body

    def delete(self, kind: Optional[str] = None, n: Optional[int] = None) -> int:
        """Delete matching entries; returns how many files were removed."""
        removed = 0
        for entry in self.list_entries(kind):
            if n is None or entry.n == n:
                entry.path.unlink()
                removed += 1
        return removed

    def get_disk_usage(self) -> Dict[str, int]:
        usage = {kind: 0 for kind in self.EXTENSIONS}
        for entry in self.list_entries():
            usage[entry.kind] += entry.path.stat().st_size
        usage["total"] = sum(usage.values())
        return usage

    @staticmethod
    def format_usage(usage: Dict[str, int]) -> str:
        """One line per-kind summary of ``get_disk_usage``, e.g. ``loadings 3.1 KiB, total 3.1 KiB``.

        Kinds with nothing cached are left out; sizes under 1 KiB are whole bytes.
        """
        def size(count: int) -> str:
            if count < 1024:
                return f"{count} B"
            value = count / 1024
            for unit in ("KiB", "MiB"):
                if value < 1024:
                    return f"{value:.1f} {unit}"
                value /= 1024
            return f"{value:.1f} GiB"

        kinds = [f"{kind} {size(usage[kind])}" for kind in sorted(usage) if kind != "total" and usage[kind]]
        return ", ".join(kinds + [f"total {size(usage.get('total', 0))}"])

    # Character tables

    def save_chartable(self, table: CharacterTable) -> CacheEntry:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["partition"] + [format_partition(rho) for rho in table.order])
        for lam, row in zip(table.order, table.exact_values):
            writer.writerow([format_partition(lam)] + [str(int(v)) for v in row])
        header = f"chartable n={table.n} order=lex-desc version={FORMAT_VERSION}"
        return self.write("chartable", table.n, header, buffer.getvalue())

    def load_chartable(self, n: int) -> Optional[CharacterTable]:
        stored = self.read("chartable", n)
        if stored is None:
            return None
        _, body = stored
        order = enumerate_partitions(n)
        try:
            rows = list(csv.reader(io.StringIO(body)))
            labels = [parse_partition(text, n) for text in rows[0][1:]]
            if labels != list(order) or len(rows) != len(order) + 1:
                raise CacheCorruptionError(f"chartable cache for n={n} has the wrong shape or order")
            values = []
            for lam, row in zip(order, rows[1:]):
                if parse_partition(row[0], n) != lam:
                    raise CacheCorruptionError(f"chartable cache for n={n}: row {row[0]} out of order")
                values.append([int(v) for v in row[1:]])
        except (ValueError, IndexError) as e:
            raise CacheCorruptionError(f"chartable cache for n={n} is malformed: {e}") from e
        return CharacterTable(n, order, values)

    # Loadings

    def save_loadings(self, table: LoadingTable) -> CacheEntry:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["partition", "r_loading", "b_loading", "v", "w"])
        for i, lam in enumerate(table.order):
            writer.writerow([
                format_partition(lam),
                repr(float(table.r[i])),
                repr(float(table.b[i])),
                repr(float(table.v[i])),
                repr(float(table.w[i])),
            ])
        header = (
            f"loadings n={table.n} mode={table.mode} "
            f"iterations={table.iterations_used[0]},{table.iterations_used[1]} "
            f"residuals={table.residuals[0]!r},{table.residuals[1]!r} version={FORMAT_VERSION}"
        )
        return self.write("loadings", table.n, header, buffer.getvalue())

    def load_loadings(self, n: int, mode: str) -> Optional[LoadingTable]:
        """Cached loadings computed with the same iteration mode, else None."""
        stored = self.read("loadings", n)
        if stored is None:
            return None
        header, body = stored
        fields = dict(item.split("=", 1) for item in header.split()[1:] if "=" in item)
        if fields.get("mode") != mode:
            logger.info("cached loadings for n=%d use mode %s, wanted %s", n, fields.get("mode"), mode)
            return None
        try:
            rows = list(csv.reader(io.StringIO(body)))[1:]
            order = enumerate_partitions(n)
            if [parse_partition(row[0], n) for row in rows] != list(order):
                raise CacheCorruptionError(f"loadings cache for n={n} has the wrong partitions")
            columns = np.array([[float(x) for x in row[1:5]] for row in rows])
            iterations = tuple(int(x) for x in fields["iterations"].split(","))
            residuals = tuple(float(x) for x in fields["residuals"].split(","))
        except (ValueError, IndexError, KeyError) as e:
            raise CacheCorruptionError(f"loadings cache for n={n} is malformed: {e}") from e
        return loading_table_from_arrays(
            n,
            columns[:, 0],
            columns[:, 1],
            columns[:, 2],
            columns[:, 3],
            iterations_used=iterations,
            residuals=residuals,
            mode=mode,
        )
