from math import factorial

import pytest

from src.combinatorics.characters import (
    build_table,
    centralizer_order,
    character_row,
    dimension,
    mn_character,
)
from src.combinatorics.partitions import Partition, enumerate_partitions
from src.errors import DomainError, ResourceBudgetError


@pytest.mark.parametrize("rho, expected", [((1, 1, 1), 6), ((3,), 3), ((2, 1), 2), ((2, 2, 1, 1), 16)])
def test_centralizer_order(rho, expected):
    assert centralizer_order(Partition(rho)) == expected


@pytest.mark.parametrize("n", [4, 7, 10])
def test_class_sizes_sum_to_n_factorial(n):
    assert sum(factorial(n) // centralizer_order(rho) for rho in enumerate_partitions(n)) == factorial(n)


def test_s3_values():
    lam = Partition((2, 1))
    assert mn_character(lam, Partition((1, 1, 1))) == 2
    assert mn_character(lam, Partition((3,))) == -1
    assert mn_character(lam, Partition((2, 1))) == 0


@pytest.mark.parametrize("n", [4, 6, 9])
def test_trivial_and_sign_characters(n):
    order = enumerate_partitions(n)
    for rho in order:
        assert mn_character(Partition((n,)), rho) == 1
        assert mn_character(Partition((1,) * n), rho) == (-1) ** (n - len(rho))


def test_size_mismatch():
    with pytest.raises(DomainError):
        mn_character(Partition((2, 1)), Partition((2, 2)))


def test_build_table_small():
    assert build_table(1).values.tolist() == [[1]]
    assert build_table(3).values.tolist() == [[1, 1, 1], [-1, 0, 2], [1, -1, 1]]


@pytest.mark.parametrize("parts, expected", [((5,), 1), ((2, 1), 2), ((3, 2), 5), ((4, 2, 1), 35)])
def test_dimension(parts, expected):
    assert dimension(Partition(parts)) == expected


@pytest.mark.parametrize("n", [5, 8])
def test_identity_column_is_the_dimension(n):
    table = build_table(n)
    assert table.dimensions() == [dimension(lam) for lam in table.order]
    assert sum(d * d for d in table.dimensions()) == factorial(n)


@pytest.mark.parametrize("n", [2, 6, 9])
def test_orthogonality(n):
    assert build_table(n).check_orthogonality()


@pytest.mark.slow
def test_orthogonality_n12():
    table = build_table(12)
    assert len(table) == 77
    assert table.check_orthogonality()


def test_character_row_matches_table(table6):
    lam = Partition((3, 2, 1))
    assert character_row(lam) == [int(v) for v in table6.row(lam)]
    assert table6.value(lam, Partition((1,) * 6)) == 16


def test_budget():
    with pytest.raises(ResourceBudgetError):
        build_table(10, max_entries=100)


@pytest.mark.slow
def test_parallel_build_matches_serial():
    serial = build_table(13, threads=1)
    parallel = build_table(13, threads=2)
    assert (serial.values == parallel.values).all()


def _sizes(low, high, fast_up_to=10):
    return [n if n <= fast_up_to else pytest.param(n, marks=pytest.mark.slow) for n in range(low, high + 1)]


@pytest.mark.parametrize("n", _sizes(1, 12))
def test_conjugate_row_is_twisted_by_the_sign(n):
    table = build_table(n)
    values = table.exact_values
    conjugates = table.order.conjugation_map()
    signs = [(-1) ** (n - len(rho)) for rho in table.order]
    for i in range(len(table)):
        assert list(values[conjugates[i]]) == [s * v for s, v in zip(signs, values[i])]


@pytest.mark.parametrize("n", _sizes(1, 12))
def test_columns_weighted_by_dimension_give_the_regular_character(n):
    table = build_table(n)
    values = table.exact_values
    dims = table.dimensions()
    identity = table.order.index(Partition((1,) * n))
    for j in range(len(table)):
        total = sum(d * values[i, j] for i, d in enumerate(dims))
        assert total == (factorial(n) if j == identity else 0)


@pytest.mark.parametrize("n", _sizes(1, 14))
def test_hook_lengths_agree_with_strip_removal(n):
    identity = Partition((1,) * n)
    for lam in enumerate_partitions(n):
        assert dimension(lam) == mn_character(lam, identity)
