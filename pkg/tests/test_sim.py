import numpy as np
import pytest

from bagwhisker.data.models import MixtureSpec
from bagwhisker.data.sim import gen_correlated_mixture, gen_lognormal, gen_mixture, gen_normal
from bagwhisker.errors import DomainError, TooFewRows


def test_same_seed_same_sample():
    a = gen_mixture(MixtureSpec(n=500, seed=3))
    b = gen_mixture(MixtureSpec(n=500, seed=3))
    np.testing.assert_array_equal(a.dataset.points, b.dataset.points)
    np.testing.assert_array_equal(a.labels, b.labels)


def test_different_seeds_differ():
    a = gen_normal(100, seed=1)
    b = gen_normal(100, seed=2)
    assert not np.array_equal(a.points, b.points)


def test_mixture_components():
    sample = gen_mixture(MixtureSpec(n=20000, contamination=0.05, seed=11))
    labels = sample.labels.astype(bool)
    points = sample.dataset.points
    assert labels.mean() == pytest.approx(0.05, abs=0.006)
    np.testing.assert_allclose(points[~labels].mean(axis=0), [100, 300], atol=0.05)
    np.testing.assert_allclose(points[labels].mean(axis=0), [103, 298], atol=0.15)
    np.testing.assert_allclose(np.cov(points[~labels], rowvar=False), np.eye(2), atol=0.05)


def test_correlated_mixture():
    sample = gen_correlated_mixture(20000, seed=5, rho=0.3)
    clean = sample.dataset.points[sample.labels == 0]
    assert np.corrcoef(clean, rowvar=False)[0, 1] == pytest.approx(0.3, abs=0.03)


def test_no_contamination():
    sample = gen_mixture(MixtureSpec(n=100, contamination=0.0))
    assert sample.labels.sum() == 0


def test_lognormal_is_positive_and_skewed():
    points = gen_lognormal(5000, seed=4).points
    assert np.all(points > 0)
    assert np.all(np.mean(points, axis=0) > np.median(points, axis=0))


@pytest.mark.parametrize("call, error", [
    (lambda: gen_normal(3), TooFewRows),
    (lambda: gen_mixture(MixtureSpec(n=10, contamination=1.5)), DomainError),
    (lambda: gen_mixture(MixtureSpec(n=10, rho=1.0)), DomainError),
    (lambda: gen_lognormal(10, sigma=0.0), DomainError),
])
def test_bad_parameters(call, error):
    with pytest.raises(error):
        call()


def test_contamination_count_within_binomial_range():
    labels = gen_mixture(MixtureSpec(n=5000, seed=21)).labels
    # central 99.9% interval of Binomial(5000, 0.05)
    assert 200 <= int(labels.sum()) <= 300


def test_clean_mixture_mean():
    points = gen_mixture(MixtureSpec(n=5000, contamination=0.0, seed=8)).dataset.points
    assert np.all(np.abs(points.mean(axis=0) - [100, 300]) <= 3 / np.sqrt(5000))


def test_lognormal_median_near_one():
    points = gen_lognormal(500, seed=9).points
    assert np.median(points[:, 0]) == pytest.approx(1.0, abs=0.15)
