"""Show how far the search distribution can contract.

For every iteration of one run, prints the smallest eigenvalue and trace of
the expected covariance next to two lower bounds that hold for any sequence of
corrected statistics:

* ``eig_min(psi0) / (nu_t - p - 1)``: psi never shrinks,
* ``lambda0 * |mu_t - mu_0|**2 / (nu_t - p - 1)``: moving the mean feeds psi.

    python scripts/covariance_floor.py --function cone --iters 500
"""

import argparse

import numpy as np

from bcmaes.conjugate_prior import expected_moments
from bcmaes.gaussian_sampler import make_rng
from bcmaes.optimizer import RunConfig, step


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--function", default="cone")
    ap.add_argument("--strategy", default="s2")
    ap.add_argument("--iters", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--every", type=int, default=50)
    args = ap.parse_args()

    cfg = RunConfig(function=args.function, strategy=args.strategy, max_iters=args.iters, seed=args.seed)
    p0 = cfg.initial_prior()
    prior, rng, best = p0, make_rng(cfg.seed), (np.inf, None)
    p = cfg.dim
    print(f"{'iter':>5} {'best f':>11} {'eig_min':>11} {'floor':>11} {'trace':>11} {'trace floor':>11}")
    for it in range(1, args.iters + 1):
        prior, rec = step(prior, cfg, rng, iteration=it, best_so_far=best)
        best = (rec.best_f_so_far, rec.best_x_so_far)
        if it % args.every and it != 1:
            continue
        cov = expected_moments(prior).covariance
        dof = prior.nu0 - p - 1
        floor = np.linalg.eigvalsh(p0.psi0).min() / dof
        tfloor = p0.lambda0 * np.sum((prior.mu0 - p0.mu0) ** 2) / dof
        print(f"{it:>5} {rec.best_f_so_far:>11.4g} {np.linalg.eigvalsh(cov).min():>11.4g} {floor:>11.4g} "
              f"{np.trace(cov):>11.4g} {tfloor:>11.4g}")


if __name__ == "__main__":
    main()
