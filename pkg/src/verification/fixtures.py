"""Reference values shipped with the package, loaded from ``data/``."""

import csv
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Tuple

from ..combinatorics.kronecker import Triple
from ..combinatorics.partitions import Partition, parse_partition

DATA_DIR = Path(__file__).parent / "data"

LOADING_TOLERANCE = 5e-4
THRESHOLD_TOLERANCE = 1e-3


@dataclass(frozen=True)
class Fixture:
    """One expected value and the tolerance it is checked with."""
    source: str
    label: str
    n: int
    expected: object
    tolerance: float = 0.0


@dataclass(frozen=True)
class AppendixRow:
    n: int
    partition: Partition
    r: float
    b: float
    r_tolerance: float
    b_tolerance: float


def decimals(text: str) -> int:
    """Digits printed after the decimal point."""
    return len(text.split(".", 1)[1]) if "." in text else 0


def printed_tolerance(text: str) -> float:
    """5e-4, widened to one unit in the last printed digit for shorter values."""
    return max(LOADING_TOLERANCE, 10.0 ** -decimals(text))


@lru_cache(maxsize=None)
def _appendix() -> Tuple[AppendixRow, ...]:
    rows = []
    with open(DATA_DIR / "appendix_a.csv", "r", encoding="utf-8", newline="") as f:
        for record in csv.DictReader(f):
            n = int(record["n"])
            rows.append(AppendixRow(
                n=n,
                partition=parse_partition(record["partition"], n),
                r=float(record["r_loading"]),
                b=float(record["b_loading"]),
                r_tolerance=printed_tolerance(record["r_loading"]),
                b_tolerance=printed_tolerance(record["b_loading"]),
            ))
    return tuple(rows)


def appendix_rows(max_n: int = 12) -> List[AppendixRow]:
    """Tabulated loadings for 6 <= n <= max_n."""
    return [row for row in _appendix() if row.n <= max_n]


@lru_cache(maxsize=None)
def tables() -> Dict[str, object]:
    with open(DATA_DIR / "tables.json", "r", encoding="utf-8") as f:
        return json.load(f)


def parse_triple(items, n: int) -> Triple:
    lam, mu, nu = (parse_partition(text, n) for text in items)
    return Triple(lam, mu, nu)


def threshold_fixtures(kind: str, low: int, high: int) -> List[Fixture]:
    """Exhaustive r* (``kind='r_star'``) or b* rows for low <= n <= high."""
    fixtures = []
    for key, row in sorted(tables()[kind].items(), key=lambda item: int(item[0])):
        n = int(key)
        if low <= n <= high:
            fixtures.append(Fixture(
                source="table_2" if kind == "r_star" else "table_1",
                label=f"{kind} n={n}",
                n=n,
                expected=(row["value"], parse_triple(row["triple"], n)),
                tolerance=THRESHOLD_TOLERANCE,
            ))
    return fixtures


def conjectured_r_fixtures(high: int = 48) -> List[Fixture]:
    return [
        Fixture("table_3", f"conjectured r_star n={key}", int(key), value, THRESHOLD_TOLERANCE)
        for key, value in sorted(tables()["conjectured_r_star"].items(), key=lambda item: int(item[0]))
        if int(key) <= high
    ]


def conjectured_b_fixtures(high: int = 24) -> List[Fixture]:
    fixtures = []
    for key, row in sorted(tables()["conjectured_b_star"].items(), key=lambda item: int(item[0])):
        n = int(key)
        if n <= high:
            lam = parse_partition(row["partition"], n)
            fixtures.append(Fixture(
                "table_4", f"conjectured b_star n={n}", n,
                (row["value"], Triple(lam, lam, lam)), THRESHOLD_TOLERANCE,
            ))
    return fixtures
