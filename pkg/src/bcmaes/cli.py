"""Command-line harness.

    bcmaes run --function cone --dim 2 --strategy s2 --seed 7 --out cone.csv
    bcmaes sweep --function rastrigin --dim 2 --strategy s2 --seeds 0..9 --out sweep/
    bcmaes list-functions

Exit codes: 0 on a completed run, 2 on numerical failure, 64 on bad flags.
Verbosity is taken from the ``BCMAES_LOG`` environment variable
(``DEBUG``, ``INFO``, ``WARNING``...).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import benchmarks
from .exceptions import ArityMismatch, UnknownFunction
from .optimizer import NUMERICAL_FAILURE, RunConfig, RunResult, run

EXIT_OK = 0
EXIT_NUMERICAL = 2
EXIT_USAGE = 64

log = logging.getLogger("bcmaes")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def trace_header(p: int) -> list[str]:
    return ["iter", "best_f_iter", "best_f_so_far", *(f"mean_{i}" for i in range(p)), "logdet_cov", "lambda_n", "nu_n"]


def trace_csv(result: RunResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(trace_header(result.config.dim))
    for rec in result.trace:
        w.writerow(
            [
                rec.iteration,
                fmt(rec.best_f_iter),
                fmt(rec.best_f_so_far),
                *(fmt(m) for m in rec.mean),
                fmt(rec.logdet_cov),
                fmt(rec.lambda_n),
                fmt(rec.nu_n),
            ]
        )
    return buf.getvalue()


def write_trace(result: RunResult, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(trace_csv(result), encoding="utf-8", newline="")
    os.replace(tmp, path)


def read_trace(path) -> list[dict[str, float]]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(fh)]


def summary_line(result: RunResult) -> str:
    return f"best_f={fmt(result.best_f)} iterations={result.iterations} stop_reason={result.stop_reason}"


def parse_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}") from None


def parse_seeds(text: str) -> list[int]:
    """``"0..9"`` (inclusive range) or ``"1,5,7"``."""
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split(".."))
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse seeds {text!r}") from None


def _config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--function", required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--start", default=None, help="comma-separated start point, default all 10")
    p.add_argument("--sigma0", type=float, default=1.0)
    p.add_argument("--popsize", type=int, default=None)
    p.add_argument("--strategy", choices=["s1", "s2"], default="s2")
    p.add_argument("--prior", choices=["niw", "nw", "mix"], default="niw")
    p.add_argument("--mix-weight", type=float, default=0.5)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-8, help="stop once best f - f_opt < tol")
    p.add_argument("--stagnation-window", type=int, default=50)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bcmaes", description="Bayesian CMA-ES experiment harness")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", help="single run, writes a per-iteration CSV trace")
    _config_flags(p_run)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--out", default=None)

    p_sweep = sub.add_parser("sweep", help="one run per seed plus an aggregate summary")
    _config_flags(p_sweep)
    p_sweep.add_argument("--seeds", default="0..9")
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--jobs", type=int, default=1)

    sub.add_parser("list-functions", help="show the benchmark registry")
    return parser


def make_config(args, seed: int) -> RunConfig:
    try:
        return RunConfig(
            function=args.function,
            dim=args.dim,
            start=parse_vector(args.start) if args.start else None,
            sigma0=args.sigma0,
            popsize=args.popsize,
            strategy=args.strategy,
            prior=args.prior,
            mix_weight=args.mix_weight,
            max_iters=args.max_iters,
            tol=args.tol,
            stagnation_window=args.stagnation_window,
            seed=seed,
        )
    except UnknownFunction as exc:
        raise UsageError(f"unknown function {exc.args[0]!r}") from None
    except (ArityMismatch, ValueError) as exc:
        raise UsageError(str(exc)) from None


def trace_name(config: RunConfig) -> str:
    return f"{config.function}_d{config.dim}_{config.strategy}_{config.prior}_seed{config.seed}.csv"


def cmd_run(args) -> int:
    config = make_config(args, args.seed)
    out = Path(args.out) if args.out else Path(trace_name(config))
    result = run(config)
    write_trace(result, out)
    print(summary_line(result))
    return EXIT_NUMERICAL if result.stop_reason == NUMERICAL_FAILURE else EXIT_OK


def aggregate(rows: list[dict]) -> dict:
    best = [r["best_f"] for r in rows]
    return {
        "runs": len(rows),
        "median_best_f": statistics.median(best),
        "successes": sum(r["success"] for r in rows),
    }


def cmd_sweep(args) -> int:
    seeds = parse_seeds(args.seeds)
    configs = [make_config(args, s) for s in seeds]
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    c0 = configs[0]
    out = Path(args.out) if args.out else Path(f"sweep_{c0.function}_d{c0.dim}_{c0.strategy}_{c0.prior}")
    if args.jobs == 1:
        results = [run(c) for c in configs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run, configs))
    rows = []
    for res in results:
        name = trace_name(res.config)
        write_trace(res, out / name)
        rows.append(
            {
                "seed": res.config.seed,
                "best_f": res.best_f,
                "iterations": res.iterations,
                "stop_reason": res.stop_reason,
                "success": res.best_f - res.config.target_value < res.config.tol,
                "trace_file": name,
            }
        )
        print(f"seed={res.config.seed} {summary_line(res)}")
    with open(out / "summary.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seed", "best_f", "iterations", "stop_reason", "success", "trace_file"])
        for r in rows:
            w.writerow([r["seed"], fmt(r["best_f"]), r["iterations"], r["stop_reason"], int(r["success"]), r["trace_file"]])
    agg = aggregate(rows)
    print(f"runs={agg['runs']} median_best_f={fmt(agg['median_best_f'])} successes={agg['successes']}")
    failed = any(r["stop_reason"] == NUMERICAL_FAILURE for r in rows)
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_list(args) -> int:
    for bf in benchmarks.registry():
        arity = "any" if bf.arity is None else str(bf.arity)
        f_opt = fmt(bf.f_opt(bf.arity or 1)) + ("" if bf.arity else " per dim")
        print(f"{bf.id}\tarity={arity}\tf_opt={f_opt}\t({bf.provenance})")
    return EXIT_OK


def main(argv=None) -> int:
    level = os.environ.get("BCMAES_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "sweep": cmd_sweep, "list-functions": cmd_list}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"bcmaes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
