"""Conjugate priors for a Gaussian search distribution.

Three prior families share one set of hyperparameters ``(mu, lambda, nu, psi)``:

* normal-inverse-Wishart (NIW) on ``(mu, Sigma)``,
* normal-Wishart (NW) on ``(mu, Lambda)`` with Wishart scale ``W = psi^-1``,
* the convex mixture ``w NIW + (1 - w) NW``.

All three have the same posterior hyperparameter update; they differ only in
the expected covariance used to sample the next population.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import spd_linalg
from .exceptions import BadWeights, DegenerateDof, DimensionMismatch
from .gaussian_sampler import GaussianMoments

NIW = "niw"
NW = "nw"
MIXTURE = "mix"


@dataclass(frozen=True)
class PriorVariant:
    """Which expected-covariance formula to use.

    ``weight`` is the NIW share of the mixture. NIW is equivalent to
    ``weight=1`` and NW to ``weight=0``.
    """

    tag: str = NIW
    weight: float = 1.0

    def __post_init__(self):
        if self.tag not in (NIW, NW, MIXTURE):
            raise ValueError(f"unknown prior variant {self.tag!r}")
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"mixture weight must lie in [0, 1], got {self.weight}")
        if self.tag == NIW and self.weight != 1.0:
            raise ValueError("NIW variant carries weight 1")
        if self.tag == NW and self.weight != 0.0:
            raise ValueError("NW variant carries weight 0")

    @classmethod
    def niw(cls) -> "PriorVariant":
        return cls(NIW, 1.0)

    @classmethod
    def nw(cls) -> "PriorVariant":
        return cls(NW, 0.0)

    @classmethod
    def mixture(cls, weight: float) -> "PriorVariant":
        return cls(MIXTURE, float(weight))

    @classmethod
    def from_name(cls, name: str, weight: float = 0.5) -> "PriorVariant":
        if name == NIW:
            return cls.niw()
        if name == NW:
            return cls.nw()
        if name in (MIXTURE, "mixture"):
            return cls.mixture(weight)
        raise ValueError(f"unknown prior variant {name!r}")


@dataclass(frozen=True, eq=False)
class PriorHyperparams:
    """Hyperparameters of the conjugate prior.

    The scale matrix is always stored in NIW orientation (``psi``); the NW
    scale matrix is its inverse and is available as :attr:`wishart_scale`.
    """

    mu0: np.ndarray
    lambda0: float
    nu0: float
    psi0: np.ndarray
    variant: PriorVariant = field(default_factory=PriorVariant.niw)

    def __post_init__(self):
        mu = np.asarray(self.mu0, dtype=float).reshape(-1)
        psi = np.asarray(self.psi0, dtype=float)
        p = mu.shape[0]
        if psi.shape != (p, p):
            raise DimensionMismatch(f"psi0 has shape {psi.shape}, expected {(p, p)}")
        if not self.lambda0 > 0:
            raise ValueError(f"lambda0 must be positive, got {self.lambda0}")
        if not self.nu0 > p + 1:
            raise DegenerateDof(f"nu0={self.nu0} must exceed p + 1 = {p + 1}")
        if not spd_linalg.is_symmetric(psi):
            raise ValueError("psi0 is not symmetric")
        mu.setflags(write=False)
        psi = psi.copy()
        psi.setflags(write=False)
        object.__setattr__(self, "mu0", mu)
        object.__setattr__(self, "psi0", psi)
        object.__setattr__(self, "lambda0", float(self.lambda0))
        object.__setattr__(self, "nu0", float(self.nu0))

    @property
    def dim(self) -> int:
        return self.mu0.shape[0]

    @property
    def wishart_scale(self) -> np.ndarray:
        return spd_linalg.inverse(self.psi0)


def default_prior(mean, sigma0: float = 1.0, variant: PriorVariant | None = None) -> PriorHyperparams:
    """Initial prior whose NIW expected covariance is ``sigma0**2 * I``.

    Uses ``lambda0 = 1`` and ``nu0 = p + 4``.
    """
    if not sigma0 > 0:
        raise ValueError(f"sigma0 must be positive, got {sigma0}")
    mu = np.asarray(mean, dtype=float).reshape(-1)
    p = mu.shape[0]
    nu0 = p + 4.0
    psi0 = sigma0**2 * (nu0 - p - 1) * np.eye(p)
    return PriorHyperparams(mu, 1.0, nu0, psi0, variant or PriorVariant.niw())


@dataclass(frozen=True, eq=False)
class SampleStats:
    n: int
    xbar: np.ndarray
    c: np.ndarray


def compute_stats(points, weights=None) -> SampleStats:
    """Sample mean and population-normalized (1/n) covariance of ``points``.

    With ``weights`` the mean is ``sum w_i x_i`` and the covariance
    ``sum w_i (x_i - xbar)(x_i - xbar)^T``. The unweighted case is the
    weighted one with ``w_i = 1/k``.
    """
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[0] < 1:
        raise DimensionMismatch(f"expected a (k, p) array of points, got shape {x.shape}")
    k = x.shape[0]
    if weights is None:
        w = np.full(k, 1.0 / k)
    else:
        w = np.asarray(weights, dtype=float).reshape(-1)
        if w.shape[0] != k:
            raise DimensionMismatch(f"{w.shape[0]} weights for {k} points")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise BadWeights("weights must be finite and nonnegative")
        if abs(math.fsum(w) - 1.0) > 1e-9:
            raise BadWeights(f"weights sum to {math.fsum(w)}, not 1")
    xbar = w @ x
    centred = x - xbar
    c = spd_linalg.symmetrize((centred.T * w) @ centred)
    return SampleStats(k, xbar, c)


def posterior_update(prior: PriorHyperparams, stats: SampleStats) -> PriorHyperparams:
    """Conjugate update of the hyperparameters with a batch of ``n`` points.

    ``mu1 = (lambda0 mu0 + n xbar) / (lambda0 + n)``,
    ``lambda1 = lambda0 + n``, ``nu1 = nu0 + n`` and
    ``psi1 = psi0 + n C + n D`` with
    ``D = lambda0 / (lambda0 + n) (xbar - mu0)(xbar - mu0)^T``.
    The same ``psi1`` serves the NW family, whose scale is ``psi1^-1``.
    """
    n = int(stats.n)
    if n < 1:
        raise ValueError("posterior update needs at least one sample")
    xbar = np.asarray(stats.xbar, dtype=float).reshape(-1)
    c = np.asarray(stats.c, dtype=float)
    p = prior.dim
    if xbar.shape != (p,) or c.shape != (p, p):
        raise DimensionMismatch(f"stats of dim {xbar.shape}/{c.shape} for a prior of dim {p}")
    lam0 = prior.lambda0
    delta = xbar - prior.mu0
    d = lam0 / (lam0 + n) * np.outer(delta, delta)
    return replace(
        prior,
        mu0=(lam0 * prior.mu0 + n * xbar) / (lam0 + n),
        lambda0=lam0 + n,
        nu0=prior.nu0 + n,
        psi0=spd_linalg.symmetrize(prior.psi0 + n * c + n * d),
    )


def covariance_coefficient(variant: PriorVariant, nu: float, p: int) -> float:
    """Scalar ``a`` such that the expected covariance is ``a * psi``."""
    if not nu > p + 1:
        raise DegenerateDof(f"nu={nu} must exceed p + 1 = {p + 1}")
    if variant.tag == NIW:
        return 1.0 / (nu - p - 1)
    if variant.tag == NW:
        return 1.0 / nu
    w = variant.weight
    return (nu - p - 1 + w * p + w) / (nu * (nu - p - 1))


def expected_moments(prior: PriorHyperparams) -> GaussianMoments:
    """Mean and expected covariance of the prior, used to sample the next population."""
    coef = covariance_coefficient(prior.variant, prior.nu0, prior.dim)
    return GaussianMoments(prior.mu0.copy(), spd_linalg.symmetrize(coef * prior.psi0))
