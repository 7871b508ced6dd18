import numpy as np
import pytest

from src.combinatorics.characters import build_table
from src.errors import CacheCorruptionError, DomainError
from src.storage.cache_manager import CacheManager


@pytest.fixture
def cache(tmp_path):
    return CacheManager(tmp_path / "cache")


def test_paths(cache, tmp_path):
    assert cache.path_for("chartable", 7) == tmp_path / "cache" / "chartable" / "n=7.v1.csv"
    assert cache.path_for("thresholds", 7).name == "n=7.v1.json"
    with pytest.raises(DomainError):
        cache.path_for("audio", 7)


def test_write_then_read(cache):
    entry = cache.write("thresholds", 5, "thresholds n=5", '{"n": 5}\n')
    assert entry.exists
    assert cache.read("thresholds", 5) == ("thresholds n=5", '{"n": 5}\n')
    assert cache.read("thresholds", 6) is None
    lines = entry.path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# thresholds n=5"
    assert lines[1] == f"# sha256={entry.checksum}"


def test_no_temporary_files_left(cache):
    cache.write("thresholds", 5, "h", "body\n")
    cache.write("thresholds", 5, "h", "other body\n")
    names = [p.name for p in (cache.base_dir / "thresholds").iterdir()]
    assert names == ["n=5.v1.json"]


def test_tampered_body_is_corrupt(cache):
    entry = cache.write("thresholds", 5, "h", "body\n")
    entry.path.write_text(entry.path.read_text(encoding="utf-8").replace("body", "bodY"), encoding="utf-8")
    with pytest.raises(CacheCorruptionError):
        cache.read("thresholds", 5)


def test_missing_checksum_is_corrupt(cache):
    path = cache.path_for("thresholds", 5)
    path.parent.mkdir(parents=True)
    path.write_text("{}\n", encoding="utf-8")
    with pytest.raises(CacheCorruptionError):
        cache.read("thresholds", 5)


def test_chartable_roundtrip(cache, table6):
    cache.save_chartable(table6)
    loaded = cache.load_chartable(6)
    assert loaded.order == table6.order
    assert np.array_equal(loaded.values, table6.values)
    assert cache.load_chartable(7) is None


def test_chartable_wrong_order_is_corrupt(cache):
    cache.save_chartable(build_table(5))
    header, body = cache.read("chartable", 5)
    lines = body.splitlines()
    lines[1], lines[2] = lines[2], lines[1]
    cache.write("chartable", 5, header, "\n".join(lines) + "\n")
    with pytest.raises(CacheCorruptionError):
        cache.load_chartable(5)


def test_loadings_roundtrip(cache, loadings6):
    cache.save_loadings(loadings6)
    loaded = cache.load_loadings(6, loadings6.mode)
    assert np.array_equal(loaded.r, loadings6.r)
    assert np.array_equal(loaded.b, loadings6.b)
    assert np.array_equal(loaded.v, loadings6.v)
    assert loaded.iterations_used == loadings6.iterations_used
    assert loaded.mode == loadings6.mode


def test_loadings_of_another_mode_are_ignored(cache, loadings6):
    cache.save_loadings(loadings6)
    assert cache.load_loadings(6, "iters=21") is None


def test_list_delete_and_usage(cache, table3, loadings6):
    cache.save_chartable(table3)
    cache.save_loadings(loadings6)
    cache.write("thresholds", 6, "h", "{}\n")
    entries = cache.list_entries()
    assert [(e.kind, e.n) for e in entries] == [("chartable", 3), ("loadings", 6), ("thresholds", 6)]
    assert all(e.is_current and e.checksum for e in entries)

    usage = cache.get_disk_usage()
    assert usage["total"] == sum(e.path.stat().st_size for e in entries)
    assert usage["loadings"] > 0

    assert cache.delete("thresholds") == 1
    assert cache.delete(n=6) == 1
    assert [(e.kind, e.n) for e in cache.list_entries()] == [("chartable", 3)]


def test_format_usage():
    usage = {"chartable": 0, "loadings": 2048, "thresholds": 512, "total": 2560}
    assert CacheManager.format_usage(usage) == "loadings 2.0 KiB, thresholds 512 B, total 2.5 KiB"
    assert CacheManager.format_usage({"chartable": 3 * 1024 ** 3, "total": 3 * 1024 ** 3}) == (
        "chartable 3.0 GiB, total 3.0 GiB"
    )
    assert CacheManager.format_usage({"total": 0}) == "total 0 B"
