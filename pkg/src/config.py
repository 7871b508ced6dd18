"""Configuration management for kronload."""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class Config:
    """Manages persistent configuration."""

    CACHE_ENV_VAR = "KRONLOAD_CACHE"

    DEFAULT_CONFIG = {
        "cache_dir": None,
        "threads": None,
        "tolerance": 1e-13,
        "max_iterations": 10000,
        "compat_iterations": 21,
        "histogram_bins": 150,
        "exhaustive_max_n": 16,
        "chartable_max_entries": 4_000_000,
        "difference_block_rows": 256,
        "tie_tolerance": 1e-9,
    }

    # key -> (type, nullable); every numeric setting must be positive
    SCHEMA = {
        "cache_dir": (str, True),
        "threads": (int, True),
        "tolerance": (float, False),
        "max_iterations": (int, False),
        "compat_iterations": (int, False),
        "histogram_bins": (int, False),
        "exhaustive_max_n": (int, False),
        "chartable_max_entries": (int, False),
        "difference_block_rows": (int, False),
        "tie_tolerance": (float, False),
    }

    def __init__(self, config_path: Optional[Path] = None):
        if config_path:
            self.config_path = Path(config_path)
        else:
            self.config_path = Path.home() / ".config" / "kronload" / "config.json"

        self._config = self._load()

    @classmethod
    def validate(cls, key: str, value: Any) -> Any:
        """The value coerced to the key's type.

        Raises:
            KeyError: for an unknown key
            ValueError: for a value of the wrong type or a non-positive number
        """
        kind, nullable = cls.SCHEMA[key]
        if value is None:
            if nullable:
                return None
            raise ValueError(f"{key} may not be null")
        if kind is str:
            if not isinstance(value, str):
                raise ValueError(f"{key} must be a string, got {value!r}")
            return value
        # bool is an int subclass; true/false in JSON is always a mistake here
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"{key} must be a number, got {value!r}")
        if kind is int and value != int(value):
            raise ValueError(f"{key} must be a whole number, got {value!r}")
        coerced = kind(value)
        if coerced <= 0:
            raise ValueError(f"{key} must be positive, got {value!r}")
        return coerced

    def _load(self) -> Dict[str, Any]:
        """Defaults overlaid with every valid entry of the config file."""
        config = self.DEFAULT_CONFIG.copy()
        if not self.config_path.exists():
            return config
        try:
            with open(self.config_path, "r") as f:
                loaded = json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.warning("ignoring unreadable config %s: %s", self.config_path, e)
            return config
        if not isinstance(loaded, dict):
            logger.warning("ignoring config %s: expected a JSON object", self.config_path)
            return config
        for key, value in loaded.items():
            if key not in self.SCHEMA:
                logger.warning("ignoring unknown config key %r in %s", key, self.config_path)
                continue
            try:
                config[key] = self.validate(key, value)
            except ValueError as e:
                logger.warning("%s; using the default %r", e, self.DEFAULT_CONFIG[key])
        return config

    def _save(self):
        """Save config to file."""
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, "w") as f:
            json.dump(self._config, f, indent=2)

    def get(self, key: str, default: Any = None) -> Any:
        """Get a config value."""
        return self._config.get(key, default)

    def set(self, key: str, value: Any):
        """Validate, set and save a config value."""
        self._config[key] = self.validate(key, value)
        self._save()

    @property
    def cache_dir(self) -> Path:
        """Cache directory: environment override, then config, then platform default."""
        env = os.environ.get(self.CACHE_ENV_VAR)
        if env:
            return Path(env)
        configured = self._config.get("cache_dir")
        if configured:
            return Path(configured)
        return Path.home() / ".cache" / "kronload"

    @cache_dir.setter
    def cache_dir(self, value: Optional[Path]):
        self.set("cache_dir", str(value) if value else None)

    @property
    def threads(self) -> int:
        return self._config.get("threads") or os.cpu_count() or 1

    @threads.setter
    def threads(self, value: Optional[int]):
        self.set("threads", value)

    @property
    def tolerance(self) -> float:
        return float(self._config.get("tolerance", 1e-13))

    @property
    def max_iterations(self) -> int:
        return int(self._config.get("max_iterations", 10000))

    @property
    def compat_iterations(self) -> int:
        return int(self._config.get("compat_iterations", 21))

    @property
    def histogram_bins(self) -> int:
        return int(self._config.get("histogram_bins", 150))

    @property
    def exhaustive_max_n(self) -> int:
        return int(self._config.get("exhaustive_max_n", 16))

    @property
    def chartable_max_entries(self) -> int:
        return int(self._config.get("chartable_max_entries", 4_000_000))

    @property
    def difference_block_rows(self) -> int:
        return int(self._config.get("difference_block_rows", 256))

    @property
    def tie_tolerance(self) -> float:
        return float(self._config.get("tie_tolerance", 1e-9))
