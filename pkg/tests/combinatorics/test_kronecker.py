from itertools import combinations_with_replacement

import numpy as np
import pytest

from src.combinatorics.characters import build_table, dimension
from src.combinatorics.kronecker import (
    KroneckerEvaluator,
    Triple,
    check_symmetry,
    depth_admissible,
    kron,
    kron_row,
)
from src.combinatorics.partitions import Partition, enumerate_partitions
from src.errors import DomainError


def P(*parts):
    return Partition(parts)


def test_s3_coefficient(table3):
    assert kron(Triple(P(2, 1), P(2, 1), P(2, 1)), table3) == 1
    assert kron(Triple(P(3), P(3), P(1, 1, 1)), table3) == 0


def test_s3_row(table3):
    assert kron_row(P(2, 1), P(2, 1), table3) == {P(3): 1, P(2, 1): 1, P(1, 1, 1): 1}


def test_trivial_and_sign_tensoring(table6):
    order = enumerate_partitions(6)
    for mu in order:
        for nu in order:
            assert kron(Triple(P(6), mu, nu), table6) == int(mu == nu)
            assert kron(Triple(P(1, 1, 1, 1, 1, 1), mu, nu), table6) == int(nu == mu.conjugate())


def test_row_dimension_identity(table6):
    lam, mu = P(3, 2, 1), P(4, 1, 1)
    row = kron_row(lam, mu, table6)
    assert sum(g * dimension(nu) for nu, g in row.items()) == dimension(lam) * dimension(mu)


def test_r_star_argmin_at_six_is_nonzero(table6):
    assert kron_row(P(3, 3), P(2, 2, 2), table6)[P(1, 1, 1, 1, 1, 1)] >= 1


def test_depth_admissible():
    assert depth_admissible(Triple(P(3, 3), P(2, 2, 2), P(1, 1, 1, 1, 1, 1)))
    assert not depth_admissible(Triple(P(6), P(6), P(5, 1)))
    assert depth_admissible(Triple(P(6), P(6), P(6)))


def test_depth_condition_is_necessary(table5):
    order = enumerate_partitions(5)
    for lam in order:
        for mu in order:
            for nu in order:
                t = Triple(lam, mu, nu)
                if not depth_admissible(t):
                    assert kron(t, table5) == 0


def test_symmetry(table6):
    assert check_symmetry(Triple(P(5, 1), P(4, 2), P(3, 2, 1)), table6)
    assert check_symmetry(Triple(P(3, 2, 1), P(3, 2, 1), P(3, 2, 1)), table6)


def test_triple_rejects_mixed_sizes():
    with pytest.raises(DomainError):
        Triple(P(2, 1), P(2, 2), P(4))


def test_table_size_mismatch(table6):
    with pytest.raises(DomainError):
        kron(Triple(P(2, 1), P(2, 1), P(3)), table6)


def test_sorted_representative():
    t = Triple(P(2, 2, 2), P(1, 1, 1, 1, 1, 1), P(3, 3)).sorted()
    assert t == Triple(P(3, 3), P(2, 2, 2), P(1, 1, 1, 1, 1, 1))


@pytest.mark.parametrize("n", [5, 7])
def test_evaluator_blocks_match_exact(n):
    table = build_table(n)
    evaluator = KroneckerEvaluator(table)
    assert evaluator.use_fast_path
    order = table.order
    for i in range(len(order)):
        block = evaluator.block(i)
        assert block.shape == (len(order) - i, len(order) - i)
        for j in range(i, len(order)):
            for k in range(i, len(order)):
                assert block[j - i, k - i] == kron(Triple(order[i], order[j], order[k]), table)


def test_exact_block_agrees_with_fast_path(table6):
    evaluator = KroneckerEvaluator(table6)
    for i in range(len(table6)):
        assert (evaluator.block(i) == evaluator._exact_block(i)).all()


def test_pair_column(table6):
    evaluator = KroneckerEvaluator(table6)
    order = table6.order
    for i in range(len(order)):
        expected = [kron(Triple(order[i], order[i], nu), table6) for nu in order]
        assert evaluator.pair_column(i).tolist() == expected


def test_evaluator_falls_back_when_uncertified(table6):
    evaluator = KroneckerEvaluator(table6)
    evaluator.use_fast_path = False
    fast = KroneckerEvaluator(table6)
    assert np.array_equal(evaluator.block(2), fast.block(2))
    assert np.array_equal(evaluator.pair_column(3), fast.pair_column(3))


def _sizes(low, high, fast_up_to):
    return [n if n <= fast_up_to else pytest.param(n, marks=pytest.mark.slow) for n in range(low, high + 1)]


@pytest.mark.parametrize("n", _sizes(1, 8, fast_up_to=6))
def test_symmetric_under_every_permutation(n):
    table = build_table(n)
    for lam, mu, nu in combinations_with_replacement(table.order, 3):
        assert check_symmetry(Triple(lam, mu, nu), table), (lam, mu, nu)


@pytest.mark.parametrize("n", _sizes(1, 10, fast_up_to=8))
def test_dimension_identity_for_every_pair(n):
    table = build_table(n)
    dims = dict(zip(table.order, table.dimensions()))
    for lam in table.order:
        for mu in table.order:
            row = kron_row(lam, mu, table)
            assert all(g >= 0 for g in row.values())
            assert sum(g * dims[nu] for nu, g in row.items()) == dims[lam] * dims[mu]


@pytest.mark.parametrize("n", _sizes(1, 10, fast_up_to=8))
def test_conjugating_two_entries_keeps_the_coefficient(n):
    table = build_table(n)
    for lam in table.order:
        for mu in table.order:
            assert kron_row(lam, mu, table) == kron_row(lam.conjugate(), mu.conjugate(), table)


@pytest.mark.parametrize("n", _sizes(2, 10, fast_up_to=8))
def test_evaluator_blocks_are_nonnegative(n):
    evaluator = KroneckerEvaluator(build_table(n))
    for i in range(len(evaluator.table)):
        assert (evaluator.block(i) >= 0).all()
