import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bcmaes.gaussian_sampler import (
    GaussianMoments,
    density_weights,
    evaluate_population,
    log_densities,
    log_density,
    make_rng,
    sample,
)
from bcmaes.exceptions import DimensionMismatch, NotPositiveDefinite
from bcmaes.spd_linalg import random_spd

from oracles import mvn_logpdf


def test_vanishing_covariance_stays_at_mean():
    m = GaussianMoments([3.0, -1.0], 1e-24 * np.eye(2))
    x = sample(m, 3, make_rng(1))
    assert np.abs(x - m.mean).max() < 1e-10


def test_sampling_is_deterministic():
    m = GaussianMoments([0.0, 1.0, 2.0], random_spd(3, np.random.default_rng(0)))
    np.testing.assert_array_equal(sample(m, 11, make_rng(42)), sample(m, 11, make_rng(42)))
    assert not np.array_equal(sample(m, 11, make_rng(42)), sample(m, 11, make_rng(43)))


def test_law_of_large_numbers():
    x = sample(GaussianMoments(np.zeros(2), np.eye(2)), 100_000, make_rng(2019))
    assert np.abs(x.mean(axis=0)).max() < 0.02
    assert np.abs(np.cov(x.T, bias=True) - np.eye(2)).max() < 0.02


def test_sample_needs_pd():
    with pytest.raises(NotPositiveDefinite):
        sample(GaussianMoments(np.zeros(2), -np.eye(2)), 2, make_rng(0))


def test_log_density_standard_values():
    assert log_density(GaussianMoments(np.zeros(2), np.eye(2)), [0.0, 0.0]) == pytest.approx(-math.log(2 * math.pi), rel=1e-15)
    assert log_density(GaussianMoments(np.zeros(1), np.eye(1)), [1.0]) == pytest.approx(
        -0.5 - 0.5 * math.log(2 * math.pi), rel=1e-15
    )


def test_log_density_matches_direct_formula(rng):
    for _ in range(10):
        m = GaussianMoments(rng.standard_normal(3), random_spd(3, rng))
        x = rng.standard_normal(3) * 2
        assert log_density(m, x) == pytest.approx(mvn_logpdf(m.mean, m.covariance, x), rel=1e-12)


def test_log_density_dimension_check():
    with pytest.raises(DimensionMismatch):
        log_density(GaussianMoments(np.zeros(2), np.eye(2)), [1.0, 2.0, 3.0])


def test_density_weights_trivial():
    m = GaussianMoments(np.zeros(2), np.eye(2))
    np.testing.assert_allclose(density_weights(m, np.ones((4, 2))), np.full(4, 0.25), rtol=1e-15)
    np.testing.assert_array_equal(density_weights(m, [[5.0, 5.0]]), [1.0])


def test_density_weights_far_tails():
    m = GaussianMoments(np.zeros(1), np.eye(1))
    pts = np.array([[1414.0], [2000.0], [1500.0]])
    logd = log_densities(m, pts)
    assert logd.max() - logd.min() > 9e5
    with np.errstate(invalid="ignore"):
        naive = np.exp(logd) / np.exp(logd).sum()
    assert np.all(np.isnan(naive))
    w = density_weights(m, pts)
    assert np.all(np.isfinite(w))
    assert w.sum() == pytest.approx(1.0, abs=1e-12)
    assert w[0] == pytest.approx(1.0)


@given(st.integers(0, 2**32 - 1), st.integers(1, 9))
def test_weights_sum_to_one_and_are_equivariant(seed, k):
    r = np.random.default_rng(seed)
    m = GaussianMoments(r.standard_normal(3), random_spd(3, r))
    pts = r.standard_normal((k, 3)) * 4
    w = density_weights(m, pts)
    assert np.all(w >= 0)
    assert abs(w.sum() - 1.0) < 1e-12
    perm = r.permutation(k)
    np.testing.assert_allclose(density_weights(m, pts[perm]), w[perm], rtol=1e-12, atol=1e-300)


def test_weights_ignore_normalizing_constant(rng):
    # rescaling the covariance changes log det by a constant only for points at the mean
    m = GaussianMoments(np.zeros(2), np.eye(2))
    pts = rng.standard_normal((5, 2))
    logd = log_densities(m, pts)
    from bcmaes.gaussian_sampler import normalize_log_weights

    np.testing.assert_array_equal(normalize_log_weights(logd), density_weights(m, pts))
    np.testing.assert_allclose(normalize_log_weights(logd + 123.456), normalize_log_weights(logd), rtol=1e-12)


def test_evaluate_population():
    m = GaussianMoments(np.zeros(2), np.eye(2))
    pop = evaluate_population(m, [[0.0, 0.0], [1.0, 0.0]], lambda x: float(np.sum(x)))
    np.testing.assert_array_equal(pop.fitness, [0.0, 1.0])
    assert pop.weights[0] > pop.weights[1]
    assert np.all(pop.densities > 0)
