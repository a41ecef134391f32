"""Independent reference implementations used by the tests.

Written with explicit loops and the unsimplified textbook formulas so they
share no code path with the package.
"""

import numpy as np


def brute_force_posterior(mu0, lam0, nu0, psi0, points):
    x = [np.asarray(v, dtype=float) for v in points]
    n = len(x)
    p = len(mu0)
    xbar = np.zeros(p)
    for v in x:
        for j in range(p):
            xbar[j] += v[j]
    xbar /= n
    c = np.zeros((p, p))
    for v in x:
        for i in range(p):
            for j in range(p):
                c[i, j] += (v[i] - xbar[i]) * (v[j] - xbar[j])
    c /= n
    d = np.zeros((p, p))
    coef = lam0 * n / (n * (lam0 + n))
    for i in range(p):
        for j in range(p):
            d[i, j] = coef * (xbar[i] - mu0[i]) * (xbar[j] - mu0[j])
    mu1 = np.array([(lam0 * mu0[j] + n * xbar[j]) / (lam0 + n) for j in range(p)])
    psi1 = np.array([[psi0[i][j] + n * c[i, j] + n * d[i, j] for j in range(p)] for i in range(p)])
    return mu1, lam0 + n, nu0 + n, psi1


def scatter_posterior(mu0, lam0, nu0, psi0, points):
    """Same posterior through the sum-of-outer-products identity."""
    x = np.asarray(points, dtype=float)
    n = len(x)
    lam1 = lam0 + n
    mu1 = (lam0 * np.asarray(mu0) + x.sum(axis=0)) / lam1
    psi1 = np.asarray(psi0) + x.T @ x + lam0 * np.outer(mu0, mu0) - lam1 * np.outer(mu1, mu1)
    return mu1, lam1, nu0 + n, psi1


def mvn_logpdf(mean, cov, x):
    p = len(mean)
    diff = np.asarray(x, dtype=float) - mean
    sign, logdet = np.linalg.slogdet(cov)
    assert sign > 0
    maha = diff @ np.linalg.inv(cov) @ diff
    return -0.5 * maha - 0.5 * logdet - 0.5 * p * np.log(2 * np.pi)


def random_prior_inputs(r, p):
    a = r.standard_normal((p, p))
    return (
        r.standard_normal(p),
        float(r.uniform(0.1, 20.0)),
        float(p + 1 + r.uniform(0.5, 50.0)),
        a @ a.T + p * np.eye(p),
    )
