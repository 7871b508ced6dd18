import numpy as np
import pytest
from scipy import stats

from src.errors import DomainError
from src.stats.fits import fit_gamma, fit_normal
from src.stats.histogram import fixed_grid
from src.stats.moments import moments


def test_normal():
    fit = fit_normal(0.0, 1.0)
    assert fit.params == (0.0, 1.0)
    assert fit.pdf([0.0])[0] == pytest.approx(stats.norm.pdf(0.0))


def test_degenerate_normal():
    fit = fit_normal(5.0, 0.0)
    assert fit.degenerate
    assert fit.params == (5.0, 0.0)
    assert fit.as_dict()["degenerate"] is True
    assert not fit.pdf(np.array([5.0])).any()


@pytest.mark.parametrize("mean, variance, shape, scale", [(2.0, 2.0, 2.0, 1.0), (1.0, 1.0, 1.0, 1.0)])
def test_gamma_moment_identities(mean, variance, shape, scale):
    fit = fit_gamma(mean, variance)
    assert fit.params == pytest.approx((shape, scale))


def test_gamma_recovers_shape_from_samples():
    rng = np.random.default_rng(2024)
    samples = stats.gamma.rvs(3.0, scale=2.0, size=10 ** 6, random_state=rng)
    m = moments(samples)
    fit = fit_gamma(m.mean, m.variance)
    assert fit.params[0] == pytest.approx(3.0, rel=0.05)
    assert fit.params[1] == pytest.approx(2.0, rel=0.05)


def test_invalid_parameters():
    with pytest.raises(DomainError):
        fit_normal(0.0, -1.0)
    with pytest.raises(DomainError):
        fit_gamma(0.0, 1.0)
    with pytest.raises(DomainError):
        fit_gamma(1.0, 0.0)


def test_expected_counts_integrate_to_total():
    fit = fit_normal(150.0, 100.0)
    edges = fixed_grid(0.0, 300.0, 150)
    centers, counts = fit.expected_counts(edges, 1000.0)
    assert len(centers) == 150
    assert counts.sum() == pytest.approx(1000.0, rel=1e-3)


def test_as_dict_names():
    assert set(fit_gamma(4.0, 2.0).as_dict()) == {"family", "shape", "scale", "sample_mean", "sample_variance"}
    assert fit_normal(1.0, 4.0).as_dict()["stddev"] == 2.0
