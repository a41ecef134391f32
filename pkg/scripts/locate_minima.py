"""Numerically locate the minima of Schwefel 1 and Eggholder.

Dense grid, then bounded local refinement. The printed values are the ones
frozen in ``bcmaes.benchmarks``.
"""

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from bcmaes.benchmarks import eggholder, schwefel1


def schwefel1_per_dim():
    grid = np.linspace(-600, 600, 120_001)
    vals = np.array([schwefel1([x]) for x in grid])
    x0 = grid[vals.argmin()]
    res = minimize_scalar(lambda x: schwefel1([x]), bracket=(x0 - 0.02, x0, x0 + 0.02), tol=1e-14)
    return res.x, res.fun


def eggholder_box():
    g = np.linspace(-512, 512, 2049)
    X, Y = np.meshgrid(g, g)
    V = np.vectorize(lambda a, b: eggholder([a, b]))(X, Y)
    j = np.unravel_index(V.argmin(), V.shape)
    res = minimize(eggholder, [X[j], Y[j]], bounds=[(-512, 512)] * 2, method="L-BFGS-B",
                   options={"ftol": 1e-15, "gtol": 1e-12})
    return res.x, res.fun


if __name__ == "__main__":
    x, f = schwefel1_per_dim()
    print(f"schwefel1: argmin coordinate {x!r}, minimum per dimension {f!r}")
    x, f = eggholder_box()
    print(f"eggholder on [-512, 512]^2: argmin {tuple(x)!r}, minimum {f!r}")
