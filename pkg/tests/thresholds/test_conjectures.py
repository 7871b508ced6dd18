import math

import pytest

from src.combinatorics.characters import build_table
from src.combinatorics.kronecker import Triple
from src.combinatorics.partitions import Partition
from src.errors import DomainError
from src.loadings.loadings import compute_loadings, compute_r_loadings
from src.thresholds.conjectures import (
    conjectured_b_star,
    conjectured_b_star_pairs,
    conjectured_r_star,
    conjectured_thresholds,
    depth_filter_min_r,
)
from src.verification.fixtures import conjectured_b_fixtures, conjectured_r_fixtures, threshold_fixtures


def test_r_star_at_eight_matches_exhaustive():
    value, t = conjectured_r_star(8, compute_loadings(8))
    assert value == pytest.approx(79.1637, abs=1e-3)
    assert t == Triple(Partition((2,) * 4), Partition((2,) * 4), Partition((2,) * 4))


def test_r_star_accepts_bare_vector():
    r, _ = compute_r_loadings(12)
    value, t = conjectured_r_star(12, r)
    assert value == pytest.approx(74.6018, abs=1e-3)
    assert t.lam == Partition((3, 3, 3, 3))


def test_r_star_needs_multiple_of_four():
    with pytest.raises(DomainError):
        conjectured_r_star(10, compute_loadings(10))
    with pytest.raises(DomainError):
        conjectured_r_star(4, compute_r_loadings(4)[0])


@pytest.mark.parametrize("n", [6, 9, 12])
def test_b_star_matches_exhaustive_table(n):
    (fixture,) = threshold_fixtures("b_star", n, n)
    expected_value, expected_triple = fixture.expected
    loadings = compute_loadings(n)
    value, t = conjectured_b_star(n, None, loadings)
    assert value == pytest.approx(expected_value, abs=1e-3)
    assert t == expected_triple
    assert conjectured_b_star(n, build_table(n), loadings) == (value, t)


def test_b_star_needs_multiple_of_three():
    with pytest.raises(DomainError):
        conjectured_b_star(8, None, compute_loadings(8))
    with pytest.raises(DomainError):
        conjectured_b_star(9, build_table(6), compute_loadings(9))


@pytest.mark.parametrize("n", [6, 7, 8, 9, 10])
def test_pair_restricted_b_star_matches_exhaustive(n):
    (fixture,) = threshold_fixtures("b_star", n, n)
    expected_value, expected_triple = fixture.expected
    value, t = conjectured_b_star_pairs(n, build_table(n), compute_loadings(n))
    assert value == pytest.approx(expected_value, abs=1e-3)
    assert t == expected_triple


def test_depth_filter(scan6, loadings6):
    value = depth_filter_min_r(6, loadings6)
    assert value == scan6.min_r_depth_violating
    assert value > scan6.thresholds.r_star


def test_depth_filter_n12_above_r_star():
    assert depth_filter_min_r(12, compute_r_loadings(12)[0]) >= 74.6018 - 1e-9


def test_depth_filter_n2_is_finite():
    assert math.isfinite(depth_filter_min_r(2, compute_r_loadings(2)[0]))


def test_combined_thresholds():
    th = conjectured_thresholds(12, compute_loadings(12))
    assert th.provenance == "conjectured"
    assert th.r_star == pytest.approx(74.6018, abs=1e-3)
    assert th.b_star == pytest.approx(47.3571, abs=1e-3)
    only_b = conjectured_thresholds(9, compute_loadings(9))
    assert only_b.r_star is None
    with pytest.raises(DomainError):
        conjectured_thresholds(7, compute_loadings(7))


@pytest.mark.long
def test_conjectured_r_star_up_to_48():
    for fixture in conjectured_r_fixtures(48):
        r, _ = compute_r_loadings(fixture.n)
        value, t = conjectured_r_star(fixture.n, r)
        assert value == pytest.approx(fixture.expected, abs=fixture.tolerance)
        assert t.mu == Partition((2,) * (fixture.n // 2))


@pytest.mark.long
def test_conjectured_b_star_at_21_and_24():
    for fixture in conjectured_b_fixtures(24):
        expected_value, expected_triple = fixture.expected
        value, t = conjectured_b_star(fixture.n, None, compute_loadings(fixture.n))
        assert value == pytest.approx(expected_value, abs=fixture.tolerance)
        assert t == expected_triple
