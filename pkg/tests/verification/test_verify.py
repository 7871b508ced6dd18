import pytest

from src.errors import UsageError
from src.verification import verify


def test_quick_scope_passes(app):
    report = verify("quick", app)
    assert report.passed, report.render()
    assert report.exit_code == 0
    sources = {c.source for c in report.checks}
    assert {"appendix_a", "section_2_example", "table_1", "table_2"} <= sources
    assert report.render().endswith("0 failed")


def test_unknown_scope(app):
    with pytest.raises(UsageError):
        verify("everything", app)


def test_corrupt_cache_is_reported(app):
    app.loadings(6)
    path = app.cache.path_for("loadings", 6)
    path.write_text(path.read_text(encoding="utf-8") + "tampered\n", encoding="utf-8")
    app._loadings.clear()

    report = verify("quick", app)
    assert report.cache_corrupt
    assert report.exit_code == 3
    assert any(c.status == "cache" for c in report.checks)


@pytest.mark.slow
def test_full_scope_passes(app):
    report = verify("full", app)
    assert report.passed, report.render()


class _TabulatedApp:
    """Answers threshold and scan requests from the embedded tables."""

    def __init__(self):
        self.requested = []

    def exhaustive_thresholds(self, n):
        from src.thresholds.scan import Thresholds
        from src.verification.fixtures import threshold_fixtures

        self.requested.append(n)
        (r,), (b,) = threshold_fixtures("r_star", n, n), threshold_fixtures("b_star", n, n)
        return Thresholds(n, r.expected[0], b.expected[0], r.expected[1], b.expected[1])

    def scan(self, n):
        from types import SimpleNamespace

        from src.verification.fixtures import tables

        counts = tables()["example_4_2"]["counts"]
        return SimpleNamespace(
            total_triples=counts["total_triples"],
            b_below_count=counts["b_below_count"],
            r_below_count=counts["r_below_count"],
            thresholds=self.exhaustive_thresholds(n),
        )


def test_large_thresholds_are_compared():
    from src.verification.verify import _thresholds

    app = _TabulatedApp()
    checks = list(_thresholds(app, 17, 20))
    assert len(checks) == 8
    assert all(c.passed for c in checks)
    assert sorted(set(app.requested)) == [17, 18, 19, 20]


def test_twenty_counts_include_both_thresholds():
    from src.verification.verify import _counts

    checks = {c.label: c for c in _counts(_TabulatedApp())}
    assert checks["b_star n=20"].passed
    assert checks["r_star n=20"].passed
    assert checks["b_star n=20"].expected == 43.74
    assert all(c.passed for c in checks.values())


def test_long_scope_reaches_twenty():
    from src.verification.verify import _plan

    app = _TabulatedApp()
    for step in _plan("long")[5:6]:
        list(step(app))
    assert max(app.requested) == 20
