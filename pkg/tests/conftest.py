"""Shared fixtures and the --runslow / --runlong switches."""

import pytest

from src.combinatorics.characters import build_table
from src.loadings.loadings import compute_loadings
from src.thresholds.scan import ScanOptions, scan


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")
    parser.addoption("--runlong", action="store_true", default=False, help="run long reproductions")


def pytest_collection_modifyitems(config, items):
    run_slow = config.getoption("--runslow") or config.getoption("--runlong")
    run_long = config.getoption("--runlong")
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    skip_long = pytest.mark.skip(reason="needs --runlong")
    for item in items:
        if "long" in item.keywords and not run_long:
            item.add_marker(skip_long)
        elif "slow" in item.keywords and not run_slow:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def table3():
    return build_table(3)


@pytest.fixture(scope="session")
def table5():
    return build_table(5)


@pytest.fixture(scope="session")
def table6():
    return build_table(6)


@pytest.fixture(scope="session")
def loadings6():
    return compute_loadings(6)


@pytest.fixture(scope="session")
def scan6(table6, loadings6):
    return scan(6, table6, loadings6, ScanOptions(threads=1))


@pytest.fixture
def app(tmp_path):
    from src.app import KronloadApp
    from src.config import Config

    return KronloadApp(config=Config(tmp_path / "config.json"), cache_dir=tmp_path / "cache", threads=1)
