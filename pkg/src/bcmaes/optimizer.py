"""The Bayesian CMA-ES predict/correct loop.

One iteration:

1. take the expected mean and covariance of the current prior,
2. sample ``k`` points and evaluate the objective,
3. weight the points by their normalized density and double-sort them,
4. correct the mean (strategy one or two) and the covariance,
5. feed the corrected pair, as the statistics of a batch of ``k`` points,
   into the conjugate posterior update.

Note on dynamics: the scale matrix only ever grows (``n C`` and ``n D`` are
PSD) while ``nu`` grows by ``k`` per iteration, so the expected covariance is
bounded below by roughly ``psi0 / nu_t``. Moving the mean a distance ``r``
also adds at least ``r**2`` to ``trace(psi)``. The search distribution
therefore contracts at most like ``1/t`` and does not reach the very small
scales a high-precision optimum would need.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import benchmarks
from .conjugate_prior import (
    PriorHyperparams,
    PriorVariant,
    SampleStats,
    default_prior,
    expected_moments,
    posterior_update,
)
from .correction_strategies import (
    corrected_covariance,
    double_sort,
    strategy_one_mean,
    strategy_two_mean,
)
from .exceptions import DegenerateDof, NotPositiveDefinite, NumericalFailure
from .gaussian_sampler import evaluate_population, make_rng, sample
from .spd_linalg import log_det

log = logging.getLogger(__name__)

STRATEGIES = ("s1", "s2")
TARGET_REACHED = "target_reached"
MAX_ITERATIONS = "max_iterations"
STAGNATION = "stagnation"
NUMERICAL_FAILURE = "numerical_failure"


def default_popsize(p: int) -> int:
    return 4 + int(math.floor(3 * math.log(p)))


@dataclass(frozen=True)
class RunConfig:
    function: str = "cone"
    dim: int = 2
    start: tuple[float, ...] | None = None
    sigma0: float = 1.0
    popsize: int | None = None
    strategy: str = "s2"
    prior: str = "niw"
    mix_weight: float = 0.5
    max_iters: int = 1000
    tol: float = 1e-8
    stagnation_window: int = 50
    stagnation_tol: float = 1e-12
    seed: int = 0
    f_opt: float | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        benchmarks.get(self.function).check_dim(self.dim)
        if self.start is not None:
            object.__setattr__(self, "start", tuple(float(v) for v in self.start))
            if len(self.start) != self.dim:
                raise ValueError(f"start has {len(self.start)} coordinates, dim is {self.dim}")
            if not all(math.isfinite(v) for v in self.start):
                raise ValueError("start must be finite")
        if not self.sigma0 > 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0}")
        if self.popsize is not None and self.popsize < 1:
            raise ValueError(f"popsize must be >= 1, got {self.popsize}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        PriorVariant.from_name(self.prior, self.mix_weight)
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.stagnation_window < 1:
            raise ValueError("stagnation_window must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def k(self) -> int:
        return self.popsize if self.popsize is not None else default_popsize(self.dim)

    @property
    def variant(self) -> PriorVariant:
        return PriorVariant.from_name(self.prior, self.mix_weight)

    @property
    def start_vector(self) -> np.ndarray:
        if self.start is None:
            return benchmarks.get(self.function).start(self.dim)
        return np.array(self.start)

    @property
    def target_value(self) -> float:
        if self.f_opt is not None:
            return self.f_opt
        return benchmarks.get(self.function).f_opt(self.dim)

    def initial_prior(self) -> PriorHyperparams:
        return default_prior(self.start_vector, self.sigma0, self.variant)


@dataclass(frozen=True, eq=False)
class IterationTrace:
    """State after one iteration; mean, log-det and counters are post-update."""

    iteration: int
    best_f_iter: float
    best_f_so_far: float
    best_x_so_far: np.ndarray
    mean: np.ndarray
    logdet_cov: float
    lambda_n: float
    nu_n: float
    points: np.ndarray = field(repr=False)
    fitness: np.ndarray = field(repr=False)
    corrected_mean: np.ndarray = field(repr=False)
    corrected_cov: np.ndarray = field(repr=False)


@dataclass(eq=False)
class RunResult:
    best_x: np.ndarray | None
    best_f: float
    iterations: int
    stop_reason: str
    trace: list[IterationTrace]
    config: RunConfig
    final_prior: PriorHyperparams
    message: str = ""


def step(
    prior: PriorHyperparams,
    config: RunConfig,
    rng: np.random.Generator,
    objective: Callable | None = None,
    iteration: int = 1,
    best_so_far: tuple[float, np.ndarray | None] = (math.inf, None),
) -> tuple[PriorHyperparams, IterationTrace]:
    """Run one predict/correct iteration and return the updated prior.

    Raises
    ------
    NumericalFailure
        When a covariance cannot be factorized or a value turns non-finite.
    """
    f = objective if objective is not None else benchmarks.get(config.function)
    k = config.k
    try:
        moments = expected_moments(prior)
        points = sample(moments, k, rng)
        pop = evaluate_population(moments, points, f)
        if np.any(np.isnan(pop.fitness)):
            raise NumericalFailure("objective returned NaN")
        ranked = double_sort(pop)
        if config.strategy == "s1":
            mu_hat = strategy_one_mean(ranked, pop, moments.mean)
        else:
            mu_hat = strategy_two_mean(pop)
        sigma_hat = corrected_covariance(ranked, pop, moments.covariance)
        new_prior = posterior_update(prior, SampleStats(k, mu_hat, sigma_hat))
        if not (np.all(np.isfinite(new_prior.mu0)) and np.all(np.isfinite(new_prior.psi0))):
            raise NumericalFailure("posterior hyperparameters are not finite")
        logdet = log_det(expected_moments(new_prior).covariance)
    except (NotPositiveDefinite, DegenerateDof, FloatingPointError, np.linalg.LinAlgError) as exc:
        raise NumericalFailure(str(exc)) from exc

    i_best = int(np.argmin(pop.fitness))
    best_f_iter = float(pop.fitness[i_best])
    best_f, best_x = best_so_far
    if best_f_iter < best_f:
        best_f, best_x = best_f_iter, pop.points[i_best].copy()
    trace = IterationTrace(
        iteration=iteration,
        best_f_iter=best_f_iter,
        best_f_so_far=best_f,
        best_x_so_far=best_x,
        mean=new_prior.mu0.copy(),
        logdet_cov=logdet,
        lambda_n=new_prior.lambda0,
        nu_n=new_prior.nu0,
        points=pop.points,
        fitness=pop.fitness,
        corrected_mean=mu_hat,
        corrected_cov=sigma_hat,
    )
    return new_prior, trace


def _stagnated(history: Sequence[float], window: int, tol: float) -> bool:
    if len(history) <= window:
        return False
    return history[-1 - window] - history[-1] < tol


def run(config: RunConfig, objective: Callable | None = None) -> RunResult:
    """Iterate :func:`step` until target, stagnation or the iteration budget.

    Numerical failures end the run with stop reason ``numerical_failure``
    instead of raising.
    """
    if config.k < 2:
        log.warning("population size %d gives degenerate covariance statistics", config.k)
    rng = make_rng(config.seed)
    prior = config.initial_prior()
    target = config.target_value
    trace: list[IterationTrace] = []
    history: list[float] = []
    best: tuple[float, np.ndarray | None] = (math.inf, None)
    reason, message = MAX_ITERATIONS, ""
    for it in range(1, config.max_iters + 1):
        try:
            prior, rec = step(prior, config, rng, objective, it, best)
        except NumericalFailure as exc:
            reason, message = NUMERICAL_FAILURE, str(exc)
            log.warning("iteration %d: numerical failure: %s", it, exc)
            break
        trace.append(rec)
        history.append(rec.best_f_so_far)
        best = (rec.best_f_so_far, rec.best_x_so_far)
        log.debug("iter %d best %.6g logdet %.3f", it, rec.best_f_so_far, rec.logdet_cov)
        if rec.best_f_so_far - target < config.tol:
            reason = TARGET_REACHED
            break
        if _stagnated(history, config.stagnation_window, config.stagnation_tol):
            reason = STAGNATION
            break
    return RunResult(
        best_x=best[1],
        best_f=best[0],
        iterations=len(trace),
        stop_reason=reason,
        trace=trace,
        config=config,
        final_prior=prior,
        message=message,
    )
