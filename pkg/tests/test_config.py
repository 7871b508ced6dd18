import json
import logging

import pytest

from src.config import Config


def test_defaults(tmp_path):
    config = Config(tmp_path / "config.json")
    assert config.tolerance == 1e-13
    assert config.max_iterations == 10000
    assert config.compat_iterations == 21
    assert config.histogram_bins == 150
    assert config.exhaustive_max_n == 16
    assert config.threads >= 1


def test_file_values_merge_over_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"histogram_bins": 60, "threads": 3}))
    config = Config(path)
    assert config.histogram_bins == 60
    assert config.threads == 3
    assert config.tie_tolerance == 1e-9


def test_corrupt_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{not json")
    assert Config(path).histogram_bins == 150


def test_set_persists(tmp_path):
    path = tmp_path / "sub" / "config.json"
    Config(path).set("exhaustive_max_n", 12)
    assert json.loads(path.read_text())["exhaustive_max_n"] == 12
    assert Config(path).exhaustive_max_n == 12


def test_cache_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.delenv(Config.CACHE_ENV_VAR, raising=False)
    config = Config(tmp_path / "config.json")
    assert config.cache_dir.name == "kronload"
    config.cache_dir = tmp_path / "configured"
    assert config.cache_dir == tmp_path / "configured"
    monkeypatch.setenv(Config.CACHE_ENV_VAR, str(tmp_path / "env"))
    assert config.cache_dir == tmp_path / "env"


def test_bad_values_fall_back_to_defaults(tmp_path, caplog):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "histogram_bins": "many",
        "tolerance": -1e-9,
        "max_iterations": 2.5,
        "exhaustive_max_n": True,
        "threads": 0,
        "tie_tolerance": 1e-6,
        "compat_iterations": 21.0,
    }))
    with caplog.at_level(logging.WARNING, logger="src.config"):
        config = Config(path)
    assert config.histogram_bins == 150
    assert config.tolerance == 1e-13
    assert config.max_iterations == 10000
    assert config.exhaustive_max_n == 16
    assert config.get("threads") is None
    assert config.tie_tolerance == 1e-6
    assert config.get("compat_iterations") == 21
    assert isinstance(config.get("compat_iterations"), int)
    assert "histogram_bins must be a number" in caplog.text
    assert "tolerance must be positive" in caplog.text


def test_unknown_keys_are_dropped(tmp_path, caplog):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"histogram_binz": 60, "threads": 2}))
    with caplog.at_level(logging.WARNING, logger="src.config"):
        config = Config(path)
    assert config.get("histogram_binz") is None
    assert config.threads == 2
    assert "unknown config key 'histogram_binz'" in caplog.text


def test_non_object_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("[1, 2, 3]")
    assert Config(path).histogram_bins == 150


def test_set_rejects_bad_values(tmp_path):
    config = Config(tmp_path / "config.json")
    with pytest.raises(ValueError):
        config.set("histogram_bins", 0)
    with pytest.raises(KeyError):
        config.set("colour", "red")
    assert not (tmp_path / "config.json").exists()
