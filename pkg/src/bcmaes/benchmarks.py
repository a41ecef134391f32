"""Benchmark objectives: cone, Schwefel 2, Rastrigin, Schwefel 1, Eggholder.

Each function is registered with its arity, its known minimum and the
default start point ``(10, ..., 10)``. Minima of Schwefel 1 and Eggholder
were located numerically (dense grid followed by bounded local search, see
``scripts/locate_minima.py``); the Eggholder value is the minimum over the
conventional box ``[-512, 512]^2``, the function is unbounded below outside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import ArityMismatch, UnknownFunction

SCHWEFEL1_CONST = 418.9829
SCHWEFEL1_CLIP = 500.0
# located numerically; see module docstring
SCHWEFEL1_ARGMIN = 420.96874635832444
SCHWEFEL1_MIN_PER_DIM = 1.2727566172543447e-05
EGGHOLDER_ARGMIN = (512.0, 404.2318076)
EGGHOLDER_MIN = -959.6406627208438


def cone(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.sqrt(np.sum(x * x)))


def schwefel2(x) -> float:
    a = np.abs(np.asarray(x, dtype=float))
    return float(np.sum(a) + np.prod(a))


def rastrigin(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def schwefel1(x) -> float:
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < SCHWEFEL1_CLIP
    terms = np.where(
        inside,
        x * np.sin(np.sqrt(np.abs(x))),
        SCHWEFEL1_CLIP * math.sin(math.sqrt(SCHWEFEL1_CLIP)),
    )
    return float(SCHWEFEL1_CONST * x.size - np.sum(terms))


def eggholder(x) -> float:
    x, y = np.asarray(x, dtype=float)
    y47 = y + 47.0
    return float(
        -y47 * math.sin(math.sqrt(abs(x / 2.0 + y47)))
        - x * math.sin(math.sqrt(abs(x - y47)))
    )


@dataclass(frozen=True)
class BenchmarkFunction:
    id: str
    fn: Callable[[np.ndarray], float]
    arity: int | None
    min_per_dim: float | None = None
    min_value: float | None = None
    argmin_coord: float | None = None
    argmin_point: tuple[float, ...] | None = None
    provenance: str = "analytic"

    def check_dim(self, p: int) -> None:
        if p < 1:
            raise ArityMismatch(f"{self.id}: dimension must be positive, got {p}")
        if self.arity is not None and p != self.arity:
            raise ArityMismatch(f"{self.id} is defined for dimension {self.arity} only, got {p}")

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=float).reshape(-1)
        self.check_dim(x.shape[0])
        return self.fn(x)

    def f_opt(self, p: int) -> float:
        self.check_dim(p)
        if self.min_value is not None:
            return self.min_value
        return self.min_per_dim * p

    def minimizer(self, p: int) -> np.ndarray:
        self.check_dim(p)
        if self.argmin_point is not None:
            return np.array(self.argmin_point)
        return np.full(p, self.argmin_coord)

    def start(self, p: int) -> np.ndarray:
        self.check_dim(p)
        return np.full(p, 10.0)


_REGISTRY = (
    BenchmarkFunction("cone", cone, None, min_per_dim=0.0, argmin_coord=0.0),
    BenchmarkFunction("schwefel2", schwefel2, None, min_per_dim=0.0, argmin_coord=0.0),
    BenchmarkFunction("rastrigin", rastrigin, None, min_per_dim=0.0, argmin_coord=0.0),
    BenchmarkFunction(
        "schwefel1",
        schwefel1,
        None,
        min_per_dim=SCHWEFEL1_MIN_PER_DIM,
        argmin_coord=SCHWEFEL1_ARGMIN,
        provenance="numerical",
    ),
    BenchmarkFunction(
        "eggholder",
        eggholder,
        2,
        min_value=EGGHOLDER_MIN,
        argmin_point=EGGHOLDER_ARGMIN,
        provenance="numerical, box [-512, 512]^2",
    ),
)


def registry() -> list[BenchmarkFunction]:
    return list(_REGISTRY)


def get(function_id: str) -> BenchmarkFunction:
    for bf in _REGISTRY:
        if bf.id == function_id:
            return bf
    raise UnknownFunction(function_id)


def evaluate(function_id: str, x) -> float:
    return get(function_id)(x)
