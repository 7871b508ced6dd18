from .cache_manager import FORMAT_VERSION, CacheEntry, CacheManager
from .threshold_store import ThresholdStore
from .export import (
    export_scan,
    histogram_rows,
    loadings_rows,
    scan_to_dict,
    write_histogram_csv,
    write_loadings_csv,
)

__all__ = [
    "FORMAT_VERSION",
    "CacheEntry",
    "CacheManager",
    "ThresholdStore",
    "export_scan",
    "histogram_rows",
    "loadings_rows",
    "scan_to_dict",
    "write_histogram_csv",
    "write_loadings_csv",
]
