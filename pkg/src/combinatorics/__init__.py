from .partitions import (
    Partition,
    PartitionSet,
    compare_lex,
    conjugate,
    count_partitions,
    depth,
    enumerate_partitions,
    format_partition,
    parse_partition,
)
from .characters import (
    CharacterTable,
    ClassData,
    build_table,
    centralizer_order,
    character_row,
    dimension,
    mn_character,
)
from .kronecker import (
    KroneckerEvaluator,
    Triple,
    check_symmetry,
    depth_admissible,
    kron,
    kron_row,
)

__all__ = [
    "Partition",
    "PartitionSet",
    "compare_lex",
    "conjugate",
    "count_partitions",
    "depth",
    "enumerate_partitions",
    "format_partition",
    "parse_partition",
    "CharacterTable",
    "ClassData",
    "build_table",
    "centralizer_order",
    "character_row",
    "dimension",
    "mn_character",
    "KroneckerEvaluator",
    "Triple",
    "check_symmetry",
    "depth_admissible",
    "kron",
    "kron_row",
]
