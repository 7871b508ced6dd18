import pytest

from src.combinatorics.kronecker import Triple
from src.combinatorics.partitions import parse_partition
from src.errors import CacheCorruptionError
from src.storage.cache_manager import CacheManager
from src.storage.threshold_store import ThresholdStore
from src.thresholds.scan import Thresholds


def _triple(text, n):
    p = parse_partition(text, n)
    return Triple(p, p, p)


@pytest.fixture
def store(tmp_path):
    return ThresholdStore(CacheManager(tmp_path))


def test_add_and_find(store):
    th = Thresholds(6, 90.9986, 59.7812, None, _triple("2^2,1^2", 6))
    assert store.add(th, {"total_triples": 1331})
    assert store.find(6) == th
    assert store.summary(6) == {"total_triples": 1331}
    assert store.find(7) is None
    assert store.summary(7) == {}


def test_conjectured_never_replaces_exhaustive(store):
    exhaustive = Thresholds(9, 84.5605, 39.8213, None, None)
    conjectured = Thresholds(9, None, 39.8213, None, _triple("3,2,1^4", 9), "conjectured")
    store.add(exhaustive)
    assert not store.add(conjectured)
    assert store.find(9) == exhaustive


def test_exhaustive_replaces_conjectured(store):
    conjectured = Thresholds(12, 74.6018, 47.3571, None, None, "conjectured")
    exhaustive = Thresholds(12, 74.6018, 47.3571, None, None)
    store.add(conjectured)
    assert store.add(exhaustive)
    assert store.find(12).is_exhaustive


def test_list_and_remove(store):
    store.add(Thresholds(7, 85.0932, 47.9477, None, None, mode="tol=1e-13"))
    store.add(Thresholds(12, 74.6018, None, None, None, "conjectured", mode="tol=1e-13"))
    listed = store.list_thresholds()
    assert [(e["n"], e["provenance"]) for e in listed] == [(7, "exhaustive"), (12, "conjectured")]
    assert listed[0]["mode"] == "tol=1e-13"
    assert listed[1]["b_star"] is None
    assert store.remove(7)
    assert not store.remove(7)
    assert store.find(7) is None


def test_malformed_entry(store):
    store.cache.write("thresholds", 8, "thresholds n=8", "not json\n")
    with pytest.raises(CacheCorruptionError):
        store.find(8)
    store.cache.write("thresholds", 8, "thresholds n=8", "{\"thresholds\": {}}\n")
    with pytest.raises(CacheCorruptionError):
        store.find(8)


def test_entries_are_kept_per_iteration_mode(store):
    converged = Thresholds(6, 90.9986, 59.7812, None, None, mode="tol=1e-13")
    fixed = Thresholds(6, 90.0512, 59.1204, None, None, mode="iters=21")
    store.add(converged, {"total_triples": 1331})
    store.add(fixed)
    assert store.find(6, "tol=1e-13") == converged
    assert store.find(6, "iters=21") == fixed
    assert store.find(6, "iters=3") is None
    assert store.summary(6, "tol=1e-13") == {"total_triples": 1331}
    assert store.summary(6, "iters=21") == {}


def test_conjectured_only_yields_within_its_mode(store):
    store.add(Thresholds(9, 84.5605, 39.8213, None, None, mode="tol=1e-13"))
    conjectured = Thresholds(9, None, 39.80, None, None, "conjectured", mode="iters=21")
    assert store.add(conjectured)
    assert store.find(9, "iters=21") == conjectured
    assert store.find(9).is_exhaustive
