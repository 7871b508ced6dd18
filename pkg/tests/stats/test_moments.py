import numpy as np
import pytest

from src.errors import DomainError
from src.stats.moments import MomentAccumulator, moments, triple_moments


def test_constant_samples():
    assert moments([4.0, 4.0, 4.0]) == (4.0, 0.0, 3)


def test_population_variance():
    m = moments([1.0, 2.0, 3.0, 4.0])
    assert m.mean == pytest.approx(2.5)
    assert m.variance == pytest.approx(1.25)
    assert m.count == 4


def test_weights_equal_repetition():
    weighted = moments([1.0, 5.0], weights=[3, 1])
    repeated = moments([1.0, 1.0, 1.0, 5.0])
    assert weighted.mean == pytest.approx(repeated.mean)
    assert weighted.variance == pytest.approx(repeated.variance)
    assert weighted.count == 4


def test_merge_in_any_grouping():
    rng = np.random.default_rng(7)
    values = rng.normal(10.0, 3.0, 1000)
    parts = np.array_split(values, 7)
    left = MomentAccumulator()
    for part in parts:
        acc = MomentAccumulator()
        acc.add_batch(part)
        left.merge(acc)
    right = MomentAccumulator()
    for value in values:
        right.add(float(value))
    assert left.count == right.count == 1000
    assert left.mean == pytest.approx(values.mean(), rel=1e-12)
    assert left.variance == pytest.approx(values.var(), rel=1e-10)
    assert right.variance == pytest.approx(values.var(), rel=1e-10)


def test_empty_and_negative():
    with pytest.raises(DomainError):
        moments([])
    acc = MomentAccumulator()
    with pytest.raises(DomainError):
        acc.add(1.0, weight=-1)
    with pytest.raises(DomainError):
        acc.add_batch([1.0, 2.0], [1.0, -1.0])


@pytest.mark.parametrize("n", [6, 8, 10])
def test_triple_identities_against_enumeration(n):
    from src.loadings.loadings import compute_loadings

    table = compute_loadings(n)
    for values in (table.r, table.b):
        sums = (values[:, None, None] + values[None, :, None] + values[None, None, :]).ravel()
        derived = triple_moments(moments(values))
        assert derived.mean == pytest.approx(sums.mean(), abs=1e-9)
        assert derived.variance == pytest.approx(sums.var(), abs=1e-9)
        assert derived.count == sums.size


@pytest.mark.slow
def test_tabulated_triple_means():
    from src.loadings.loadings import compute_loadings
    from src.verification.fixtures import tables

    means = tables()["section_3_means"]
    for n in (14, 15, 16):
        table = compute_loadings(n)
        for q in ("r", "b"):
            observed = triple_moments(moments(getattr(table, q))).mean
            assert observed == pytest.approx(means[q][str(n)], abs=0.01)
