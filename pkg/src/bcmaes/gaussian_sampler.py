"""Multivariate normal sampling, log-densities and density weights."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from . import spd_linalg
from .exceptions import DimensionMismatch

LOG_2PI = math.log(2.0 * math.pi)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox generator; same seed gives the same stream on every platform."""
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True, eq=False)
class GaussianMoments:
    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        cov = np.asarray(self.covariance, dtype=float)
        if cov.shape != (mean.shape[0], mean.shape[0]):
            raise DimensionMismatch(f"mean of dim {mean.shape[0]} with covariance {cov.shape}")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


@dataclass(frozen=True, eq=False)
class EvaluatedPopulation:
    """``k`` sampled points with fitness, log-densities and normalized weights.

    Densities are kept in log space; :attr:`densities` exponentiates them and
    may underflow to zero for points far in the tails.
    """

    points: np.ndarray
    fitness: np.ndarray
    log_densities: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        k = len(self.points)
        if k < 1:
            raise ValueError("a population needs at least one point")
        for name in ("fitness", "log_densities", "weights"):
            if len(getattr(self, name)) != k:
                raise DimensionMismatch(f"{name} has length {len(getattr(self, name))}, expected {k}")

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def densities(self) -> np.ndarray:
        return np.exp(self.log_densities)


def sample(moments: GaussianMoments, k: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``k`` points as ``mean + L z``; returns a ``(k, p)`` array."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    L = spd_linalg.cholesky(moments.covariance)
    z = rng.standard_normal((k, moments.dim))
    return moments.mean + z @ L.T


def log_densities(moments: GaussianMoments, points) -> np.ndarray:
    x = np.atleast_2d(np.asarray(points, dtype=float))
    if x.shape[1] != moments.dim:
        raise DimensionMismatch(f"points of dim {x.shape[1]} for moments of dim {moments.dim}")
    L = spd_linalg.cholesky(moments.covariance)
    z = solve_triangular(L, (x - moments.mean).T, lower=True)
    half_logdet = np.sum(np.log(np.diag(L)))
    return -0.5 * np.sum(z * z, axis=0) - half_logdet - 0.5 * moments.dim * LOG_2PI


def log_density(moments: GaussianMoments, x) -> float:
    x = np.asarray(x, dtype=float).reshape(-1)
    return float(log_densities(moments, x[None, :])[0])


def normalize_log_weights(logd) -> np.ndarray:
    logd = np.asarray(logd, dtype=float)
    w = np.exp(logd - logd.max())
    return w / w.sum()


def density_weights(moments: GaussianMoments, points) -> np.ndarray:
    """Densities of ``points`` under ``moments`` normalized to sum to one.

    Computed in log space so that far-apart points never produce 0/0.
    """
    return normalize_log_weights(log_densities(moments, points))


def evaluate_population(moments: GaussianMoments, points, objective) -> EvaluatedPopulation:
    x = np.atleast_2d(np.asarray(points, dtype=float))
    fitness = np.array([float(objective(xi)) for xi in x])
    logd = log_densities(moments, x)
    return EvaluatedPopulation(x, fitness, logd, normalize_log_weights(logd))
