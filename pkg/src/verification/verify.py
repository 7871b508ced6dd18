"""The ``verify`` command: recompute reference values and compare."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional

import numpy as np

from ..combinatorics.partitions import enumerate_partitions
from ..errors import CacheCorruptionError, KronloadError, UsageError
from ..loadings.loadings import triple_loading
from ..loadings.operators import DifferenceOperator, SimilitudeOperator
from ..loadings.power_iteration import Fixed, power_iteration
from ..stats.moments import moments, triple_moments
from ..thresholds.classify import classify
from ..thresholds.conjectures import conjectured_b_star, conjectured_r_star
from .fixtures import (
    appendix_rows,
    conjectured_b_fixtures,
    conjectured_r_fixtures,
    parse_triple,
    tables,
    threshold_fixtures,
)

logger = logging.getLogger(__name__)

SCOPES = ("quick", "full", "long")

ITERATE_TOLERANCE = 1e-4
TWO_DECIMALS = 0.01


@dataclass
class CheckResult:
    source: str
    label: str
    status: str
    observed: object = None
    expected: object = None
    tolerance: Optional[float] = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def render(self) -> str:
        line = f"[{self.status.upper():>5}] {self.source}: {self.label}"
        if self.status != "pass" or self.detail:
            parts = []
            if self.observed is not None:
                parts.append(f"observed {self.observed}")
            if self.expected is not None:
                parts.append(f"expected {self.expected}")
            if self.tolerance is not None:
                parts.append(f"tol {self.tolerance:g}")
            if self.detail:
                parts.append(self.detail)
            line += " (" + "; ".join(parts) + ")"
        return line


@dataclass
class VerificationReport:
    scope: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def cache_corrupt(self) -> bool:
        return any(c.status == "cache" for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 3

    def render(self) -> str:
        lines = [c.render() for c in self.checks]
        failed = sum(1 for c in self.checks if not c.passed)
        lines.append(f"verify --scope {self.scope}: {len(self.checks) - failed} passed, {failed} failed")
        return "\n".join(lines)


def _check(source: str, label: str, observed: float, expected: float, tol: float, detail: str = "") -> CheckResult:
    ok = abs(observed - expected) <= tol
    return CheckResult(source, label, "pass" if ok else "fail", round(observed, 6), expected, tol, detail)


def _appendix(app, max_n: int) -> Iterator[CheckResult]:
    rows = appendix_rows(max_n)
    for n in sorted({row.n for row in rows}):
        table = app.loadings(n)
        misses = []
        for row in (r for r in rows if r.n == n):
            r, b = table.r_of(row.partition), table.b_of(row.partition)
            if abs(r - row.r) > row.r_tolerance:
                misses.append(f"r{row.partition}={r:.4f} vs {row.r}")
            if abs(b - row.b) > row.b_tolerance:
                misses.append(f"b{row.partition}={b:.4f} vs {row.b}")
        count = sum(1 for r in rows if r.n == n)
        yield CheckResult(
            "appendix_a", f"n={n} ({count} partitions)",
            "fail" if misses else "pass",
            detail="; ".join(misses[:5]),
        )


def _section_2(app) -> Iterator[CheckResult]:
    data = tables()["section_2_example"]
    order = enumerate_partitions(data["n"])
    y, z = SimilitudeOperator(order), DifferenceOperator(order)

    yield CheckResult(
        "section_2_example", "first column of Y_6",
        "pass" if list(y.dense()[:, 0]) == data["y_first_column"] else "fail",
        observed=list(int(v) for v in y.dense()[:, 0]), expected=data["y_first_column"],
    )
    yield CheckResult(
        "section_2_example", "first column of Z_6",
        "pass" if list(z.dense()[:, 0]) == data["z_first_column"] else "fail",
        observed=list(int(v) for v in z.dense()[:, 0]), expected=data["z_first_column"],
    )

    for name, operator in (("v", y), ("w", z)):
        steps = max(int(k) for k in data[name])
        trace = power_iteration(operator, len(order), Fixed(steps), record=True).trace
        for k, expected in sorted(data[name].items(), key=lambda item: int(item[0])):
            deviation = float(np.abs(trace[int(k) - 1] - np.array(expected)).max())
            yield _check("section_2_example", f"{name}_{k}", deviation, 0.0, ITERATE_TOLERANCE,
                         "max deviation")

    loadings = app.loadings(data["n"])
    for name in ("r", "b"):
        deviation = float(np.abs(getattr(loadings, name) - np.array(data[name])).max())
        yield _check("section_2_example", f"{name}-loadings of n=6", deviation, 0.0, TWO_DECIMALS,
                     "max deviation")


def _thresholds(app, low: int, high: int) -> Iterator[CheckResult]:
    for kind, attr, arg in (("r_star", "r_star", "argmin_r"), ("b_star", "b_star", "argmin_b")):
        for fixture in threshold_fixtures(kind, low, high):
            value, triple = fixture.expected
            th = app.exhaustive_thresholds(fixture.n)
            observed = getattr(th, attr)
            argmin = getattr(th, arg)
            result = _check(fixture.source, fixture.label, observed, value, fixture.tolerance)
            if argmin != triple:
                result.status = "fail"
                result.detail = f"attained by {argmin}, expected {triple}"
            yield result


def _section_3(app) -> Iterator[CheckResult]:
    for name, rows in tables()["section_3_means"].items():
        for key, expected in sorted(rows.items()):
            n = int(key)
            partition = moments(getattr(app.loadings(n), name))
            yield _check("section_3_means", f"mean {name}(t) n={n}",
                         triple_moments(partition).mean, expected, TWO_DECIMALS)


def _classify_example(app) -> Iterator[CheckResult]:
    data = tables()["example_4_2"]["classify"]
    n = data["n"]
    t = parse_triple(data["triple"], n)
    loadings = app.loadings(n)
    th = app.thresholds(n)
    verdict = classify(t, th, loadings)
    b = triple_loading(t, loadings).b
    yield CheckResult(
        "example_4_2", f"classify n={n}",
        "pass" if verdict.kind.value == data["verdict"] else "fail",
        observed=verdict.kind.value, expected=data["verdict"],
        detail=verdict.describe(),
    )
    yield _check("example_4_2", f"b(t) n={n}", b, data["b"], 0.005)
    yield _check("example_4_2", f"b_star n={n}", th.b_star, data["b_star"], 0.005)


def _ties(app, n: int) -> Iterator[CheckResult]:
    expected = [parse_triple(items, n) for items in tables()["b_star_ties"][str(n)]]
    result = app.scan(n)
    observed = sorted(result.ties_b, key=lambda t: tuple(p.parts for p in t))
    wanted = sorted(expected, key=lambda t: tuple(p.parts for p in t))
    yield CheckResult(
        "table_1", f"b_star ties n={n}",
        "pass" if observed == wanted else "fail",
        observed=[str(t) for t in observed], expected=[str(t) for t in wanted],
    )


def _conjectures(app) -> Iterator[CheckResult]:
    for fixture in conjectured_r_fixtures(48):
        value, _ = conjectured_r_star(fixture.n, app.r_loadings(fixture.n))
        yield _check(fixture.source, fixture.label, value, fixture.expected, fixture.tolerance)
    for fixture in conjectured_b_fixtures(24):
        expected_value, expected_triple = fixture.expected
        value, triple = conjectured_b_star(fixture.n, None, app.loadings(fixture.n))
        result = _check(fixture.source, fixture.label, value, expected_value, fixture.tolerance)
        if triple != expected_triple:
            result.status = "fail"
            result.detail = f"attained by {triple}, expected {expected_triple}"
        yield result


def _counts(app) -> Iterator[CheckResult]:
    data = tables()["example_4_2"]["counts"]
    result = app.scan(data["n"])
    for key in ("total_triples", "b_below_count", "r_below_count"):
        observed = getattr(result, key)
        yield CheckResult(
            "example_4_2", f"{key} n={data['n']}",
            "pass" if observed == data[key] else "fail",
            observed=observed, expected=data[key],
        )
    total = result.total_triples
    yield _check("example_4_2", "b_below percent", round(100.0 * result.b_below_count / total, 1),
                 data["b_below_percent"], 1e-9)
    yield _check("example_4_2", "r_below percent", round(100.0 * result.r_below_count / total, 2),
                 data["r_below_percent"], 1e-9)
    for key in ("b_star", "r_star"):
        yield _check("example_4_2", f"{key} n={data['n']}", getattr(result.thresholds, key), data[key], 0.005)


def _plan(scope: str) -> List[Callable]:
    if scope == "quick":
        return [
            lambda app: _appendix(app, 9),
            _section_2,
            lambda app: _thresholds(app, 6, 9),
        ]
    plan = [
        lambda app: _appendix(app, 12),
        _section_2,
        lambda app: _thresholds(app, 6, 14),
        _section_3,
        _classify_example,
    ]
    if scope == "long":
        plan += [
            lambda app: _thresholds(app, 15, 20),
            lambda app: _ties(app, 16),
            _conjectures,
            _counts,
        ]
    return plan


def verify(scope: str, app) -> VerificationReport:
    """
    Run every check of ``scope`` against ``app`` (a KronloadApp).

    quick covers n <= 9, full adds the rest of the tabulated loadings, the
    thresholds up to n = 14, the mean values and the n = 18 classification;
    long adds the exhaustive thresholds for 15 <= n <= 20, the n = 16 ties,
    the conjectured thresholds and the n = 20 counts. Scans above n = 16
    need an app built with ``allow_long``.

    Returns:
        VerificationReport; a corrupt cache entry is reported with status
        ``cache`` rather than as a mismatch
    """
    if scope not in SCOPES:
        raise UsageError(f"unknown scope {scope!r}; expected one of {', '.join(SCOPES)}")
    report = VerificationReport(scope)
    for step in _plan(scope):
        try:
            for check in step(app):
                logger.info(check.render())
                report.checks.append(check)
        except CacheCorruptionError as e:
            report.checks.append(CheckResult("cache", "cache entry", "cache", detail=str(e)))
        except KronloadError as e:
            report.checks.append(CheckResult("error", type(e).__name__, "error", detail=str(e)))
    return report
