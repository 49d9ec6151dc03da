"""Command-line entry point: ``run``, ``list-functions`` and ``single``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import benchmarks
from .harness import (
    ALGORITHMS,
    CampaignError,
    ConfigError,
    build_config,
    fmt,
    format_convergence_csv,
    parse_config_text,
    run_algorithm,
    run_campaign,
)
from .sso import DISTANCE_SCALES


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="socialspider", description="Social spider optimization experiments")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a comparison campaign and write CSV tables")
    run.add_argument("--config", type=Path, help="flat 'key = value' file; keys are the flag names")
    run.add_argument("--functions", help="comma-separated ids (f1..f19) or 'all'")
    run.add_argument("--algorithms", help=f"comma-separated subset of {','.join(ALGORITHMS)}")
    run.add_argument("--runs", type=int)
    run.add_argument("--iterations", type=int)
    run.add_argument("--population", type=int)
    run.add_argument("--pf", type=float)
    run.add_argument("--seed", type=int, help="base seed; run k uses seed + k")
    run.add_argument("--out", help="output directory")
    run.add_argument("--distance-scale", dest="distance_scale", choices=DISTANCE_SCALES)
    run.add_argument("--jobs", type=int, help="worker processes")
    run.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")

    sub.add_parser("list-functions", help="print the benchmark registry as CSV")

    single = sub.add_parser("single", help="one run; the trace goes to stdout")
    single.add_argument("--function", required=True)
    single.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    single.add_argument("--seed", type=int, default=0)
    single.add_argument("--iterations", type=int, default=1000)
    single.add_argument("--population", type=int, default=50)
    single.add_argument("--pf", type=float, default=0.7)
    single.add_argument("--distance-scale", dest="distance_scale", choices=DISTANCE_SCALES, default="raw")
    return p


def _cmd_run(args) -> int:
    file_values = parse_config_text(args.config.read_text()) if args.config else {}
    flags = {
        "functions": args.functions,
        "algorithms": args.algorithms,
        "runs": args.runs,
        "iterations": args.iterations,
        "population": args.population,
        "pf": args.pf,
        "seed": args.seed,
        "out": args.out,
        "distance-scale": args.distance_scale,
        "jobs": args.jobs,
    }
    cfg = build_config(file_values, flags)
    if not args.quiet:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    run_campaign(cfg)
    print(Path(cfg.out) / "summary.csv")
    print(Path(cfg.out) / "pvalues.csv")
    return 0


def _cmd_list(args) -> int:
    print("id,name,low,high,dimension,optimum")
    for e in benchmarks.list_functions():
        b = e.spec.bounds
        opt = "" if e.spec.optimum_value is None else fmt(e.spec.optimum_value)
        print(f"{e.id},{e.name},{fmt(b.low[0])},{fmt(b.high[0])},{e.spec.dimension},{opt}")
    return 0


def _cmd_single(args) -> int:
    try:
        benchmarks.get(args.function)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from None
    rec = run_algorithm(args.algorithm, args.function, args.seed, args.iterations, args.population,
                        args.pf, args.distance_scale)
    comments = [f"# function={args.function} algorithm={args.algorithm} seed={args.seed} "
                f"evaluations={rec.evaluations} best={fmt(rec.best_fitness)}"]
    sys.stdout.write(format_convergence_csv(rec, comments))
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list-functions":
            return _cmd_list(args)
        return _cmd_single(args)
    except (ConfigError, CampaignError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
