"""Bayesian CMA-ES: conjugate-prior updates of a Gaussian search distribution."""

from .benchmarks import BenchmarkFunction, evaluate, registry
from .conjugate_prior import (
    PriorHyperparams,
    PriorVariant,
    SampleStats,
    compute_stats,
    default_prior,
    expected_moments,
    posterior_update,
)
from .gaussian_sampler import GaussianMoments, EvaluatedPopulation, make_rng
from .optimizer import IterationTrace, RunConfig, RunResult, run, step

__all__ = [
    "BenchmarkFunction",
    "EvaluatedPopulation",
    "GaussianMoments",
    "IterationTrace",
    "PriorHyperparams",
    "PriorVariant",
    "RunConfig",
    "RunResult",
    "SampleStats",
    "compute_stats",
    "default_prior",
    "evaluate",
    "expected_moments",
    "make_rng",
    "posterior_update",
    "registry",
    "run",
    "step",
]
