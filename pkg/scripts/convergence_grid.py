"""Strategy one vs strategy two (and the three priors) on the benchmark suite.

Writes one CSV trace per run under ``--out`` and prints a table of the median
final best fitness over the seeds.

    python scripts/convergence_grid.py --seeds 10 --max-iters 500 --out grid/
"""

import argparse
import statistics
from itertools import product
from pathlib import Path

from bcmaes.cli import trace_name, write_trace
from bcmaes.optimizer import RunConfig, run

FUNCTIONS = ["cone", "schwefel2", "rastrigin", "schwefel1", "eggholder"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--max-iters", type=int, default=500)
    ap.add_argument("--stagnation-window", type=int, default=50)
    ap.add_argument("--priors", default="niw,nw,mix")
    ap.add_argument("--out", default="grid")
    args = ap.parse_args()

    out = Path(args.out)
    print(f"{'function':<10} {'prior':<5} {'S1 median':>12} {'S2 median':>12}")
    for fid, prior in product(FUNCTIONS, args.priors.split(",")):
        medians = {}
        for strategy in ("s1", "s2"):
            finals = []
            for seed in range(args.seeds):
                cfg = RunConfig(function=fid, dim=2, strategy=strategy, prior=prior,
                                max_iters=args.max_iters, stagnation_window=args.stagnation_window, seed=seed)
                res = run(cfg)
                write_trace(res, out / trace_name(cfg))
                finals.append(res.best_f - cfg.target_value)
            medians[strategy] = statistics.median(finals)
        print(f"{fid:<10} {prior:<5} {medians['s1']:>12.4g} {medians['s2']:>12.4g}")


if __name__ == "__main__":
    main()
