"""Reordering corrections of the sampled mean and covariance.

After a population is drawn, points are first sorted by density weight
(descending), then stably re-sorted by fitness (ascending) while the weight
sequence stays put. The ``i``-th best point is thereby paired with the
``i``-th largest weight. Comparing moments under this pairing with moments
under the original pairing gives a Monte Carlo correction that shifts the
search distribution toward better points.

Weighted sums use :func:`math.fsum`, so they are exactly rounded and do not
depend on summation order. The degenerate cases (one point, fitness order
equal to density order, uniform weights) therefore return the prior moments
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch
from .gaussian_sampler import EvaluatedPopulation
from .spd_linalg import ensure_spd


@dataclass(frozen=True, eq=False)
class SortedPopulation:
    """Fitness-ascending points paired with density-descending weights.

    ``density_order`` is the permutation of the raw population that sorts
    weights descending; ``fitness_order`` is the stable fitness sort applied on
    top of it. ``points[i]`` is raw point ``density_order[fitness_order[i]]``.
    """

    points: np.ndarray
    weights: np.ndarray
    fitness: np.ndarray
    density_order: np.ndarray
    fitness_order: np.ndarray


def double_sort(pop: EvaluatedPopulation) -> SortedPopulation:
    density_order = np.argsort(-pop.weights, kind="stable")
    by_density = pop.points[density_order]
    fitness_by_density = pop.fitness[density_order]
    fitness_order = np.argsort(fitness_by_density, kind="stable")
    return SortedPopulation(
        points=by_density[fitness_order],
        weights=pop.weights[density_order],
        fitness=fitness_by_density[fitness_order],
        density_order=density_order,
        fitness_order=fitness_order,
    )


def weighted_mean(points: np.ndarray, weights: np.ndarray) -> np.ndarray:
    prods = weights[:, None] * points
    return np.array([math.fsum(col) for col in prods.T])


def weighted_scatter(points: np.ndarray, weights: np.ndarray, centre: np.ndarray) -> np.ndarray:
    """``sum_i w_i (x_i - centre)(x_i - centre)^T``, exactly symmetric."""
    a = points - centre
    p = a.shape[1]
    out = np.empty((p, p))
    for i in range(p):
        wa = weights * a[:, i]
        for j in range(i, p):
            out[i, j] = out[j, i] = math.fsum(wa * a[:, j])
    return out


def _check(sorted_pop: SortedPopulation, raw: EvaluatedPopulation, dim: int) -> None:
    if sorted_pop.points.shape != raw.points.shape:
        raise DimensionMismatch("sorted and raw populations differ in shape")
    if raw.points.shape[1] != dim:
        raise DimensionMismatch(f"points of dim {raw.points.shape[1]}, expected {dim}")


def strategy_one_mean(sorted_pop: SortedPopulation, raw: EvaluatedPopulation, mu_hat) -> np.ndarray:
    """Reordered Monte Carlo mean minus the Monte Carlo bias of the raw sample.

    ``sum w_(i) X_(i) - (sum w_i X_i - mu_hat)``.
    """
    mu_hat = np.asarray(mu_hat, dtype=float).reshape(-1)
    _check(sorted_pop, raw, mu_hat.shape[0])
    reordered = weighted_mean(sorted_pop.points, sorted_pop.weights)
    plain = weighted_mean(raw.points, raw.weights)
    return mu_hat + (reordered - plain)


def strategy_two_mean(pop: EvaluatedPopulation) -> np.ndarray:
    """Best point of the population; the first sampled wins ties."""
    return pop.points[int(np.argmin(pop.fitness))].copy()


def covariance_correction(sorted_pop: SortedPopulation, raw: EvaluatedPopulation, sigma_hat) -> np.ndarray:
    """Corrected covariance before PSD repair; may be indefinite."""
    sigma_hat = np.asarray(sigma_hat, dtype=float)
    _check(sorted_pop, raw, sigma_hat.shape[0])
    ms = weighted_mean(sorted_pop.points, sorted_pop.weights)
    reordered = weighted_scatter(sorted_pop.points, sorted_pop.weights, ms)
    mr = weighted_mean(raw.points, raw.weights)
    plain = weighted_scatter(raw.points, raw.weights, mr)
    return sigma_hat + (reordered - plain)


def corrected_covariance(
    sorted_pop: SortedPopulation,
    raw: EvaluatedPopulation,
    sigma_hat,
    floor: float | None = None,
) -> np.ndarray:
    return ensure_spd(covariance_correction(sorted_pop, raw, sigma_hat), floor)
