from .operators import (
    DifferenceOperator,
    SimilitudeOperator,
    difference_matvec,
    similitude_matvec,
)
from .power_iteration import (
    Converge,
    Fixed,
    IterationMode,
    PowerIterationResult,
    power_iteration,
)
from .loadings import (
    LoadingTable,
    TripleLoading,
    compute_b_loadings,
    compute_loadings,
    compute_r_loadings,
    loading_table_from_arrays,
    normalize,
    triple_loading,
)

__all__ = [
    "DifferenceOperator",
    "SimilitudeOperator",
    "difference_matvec",
    "similitude_matvec",
    "Converge",
    "Fixed",
    "IterationMode",
    "PowerIterationResult",
    "power_iteration",
    "LoadingTable",
    "TripleLoading",
    "compute_b_loadings",
    "compute_loadings",
    "compute_r_loadings",
    "loading_table_from_arrays",
    "normalize",
    "triple_loading",
]
