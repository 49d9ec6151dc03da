"""Multi-seed comparison campaigns: configuration, execution and CSV output.

A campaign directory holds::

    summary.csv                      function,algorithm,ab,mb,sd
    pvalues.csv                      function,pair,p
    traces/<fid>_<alg>_<run>.csv     iteration,best_so_far

Every file starts with ``#`` comment lines carrying the config digest and
base seed. Numbers are written with 17 significant digits so values
round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional

import numpy as np

from . import benchmarks
from .baselines import AbcParams, PsoParams, abc_run, pso_run
from .core import RunRecord
from .sso import DISTANCE_SCALES, SsoParams
from .sso import run as sso_run
from .stats import RunSummary, summarize, wilcoxon_ranksum

__all__ = [
    "ALGORITHMS",
    "ConfigError",
    "CampaignError",
    "ExperimentConfig",
    "ComparisonTable",
    "parse_config_text",
    "build_config",
    "run_algorithm",
    "run_campaign",
    "format_convergence_csv",
    "write_convergence_csv",
    "read_csv_rows",
    "fmt",
]

log = logging.getLogger(__name__)

ALGORITHMS = ("sso", "pso", "abc")
PAIRS = (("sso", "pso"), ("sso", "abc"))


class ConfigError(ValueError):
    pass


class CampaignError(RuntimeError):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class ExperimentConfig:
    functions: tuple = benchmarks.FUNCTION_IDS
    algorithms: tuple = ALGORITHMS
    runs: int = 30
    iterations: int = 1000
    population: int = 50
    pf: float = 0.7
    seed: int = 0
    out: str = "results"
    distance_scale: str = "raw"
    jobs: int = 1

    def __post_init__(self):
        for fid in self.functions:
            if fid not in benchmarks.FUNCTION_IDS:
                raise ConfigError(f"unknown function id {fid!r} (valid: f1..f19 or 'all')")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm id {alg!r} (valid: {', '.join(ALGORITHMS)})")
        if not self.functions or not self.algorithms:
            raise ConfigError("functions and algorithms must not be empty")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.iterations < 0:
            raise ConfigError(f"iterations must be >= 0, got {self.iterations}")
        if self.population < 4:
            raise ConfigError(f"population must be >= 4, got {self.population}")
        if not 0.0 <= self.pf <= 1.0:
            raise ConfigError(f"pf must lie in [0, 1], got {self.pf}")
        if self.distance_scale not in DISTANCE_SCALES:
            raise ConfigError(f"distance-scale must be one of {DISTANCE_SCALES}, got {self.distance_scale!r}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")

    @property
    def base_seed(self) -> int:
        return self.seed

    def digest(self) -> str:
        """Hash of everything that affects numbers (not ``out`` or ``jobs``)."""
        d = asdict(self)
        d.pop("out")
        d.pop("jobs")
        blob = json.dumps(d, sort_keys=True, default=list).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _split_list(value: str) -> tuple:
    return tuple(v.strip() for v in value.split(",") if v.strip())


def _coerce(key: str, value):
    """Turn a raw flag/file value into the config field type."""
    try:
        if key == "functions":
            items = _split_list(value) if isinstance(value, str) else tuple(value)
            return benchmarks.FUNCTION_IDS if items == ("all",) else items
        if key == "algorithms":
            items = _split_list(value) if isinstance(value, str) else tuple(value)
            return ALGORITHMS if items == ("all",) else items
        if key in ("runs", "iterations", "population", "seed", "jobs"):
            return int(value)
        if key == "pf":
            return float(value)
        return str(value)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {value!r}") from None


# flag name (as written in files and on the command line) -> field name
KEYS = {
    "functions": "functions",
    "algorithms": "algorithms",
    "runs": "runs",
    "iterations": "iterations",
    "population": "population",
    "pf": "pf",
    "seed": "seed",
    "out": "out",
    "distance-scale": "distance_scale",
    "jobs": "jobs",
}


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-")
        if key not in KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = value
    return values


def build_config(file_values: Optional[Mapping] = None, flag_values: Optional[Mapping] = None) -> ExperimentConfig:
    """Defaults, overridden by file values, overridden by flags (``None`` = unset)."""
    merged = {}
    for source in (file_values or {}, flag_values or {}):
        for key, value in source.items():
            if value is None:
                continue
            name = KEYS.get(key) or KEYS.get(key.replace("_", "-"))
            if name is None:
                raise ConfigError(f"unknown key {key!r}")
            merged[name] = _coerce(name, value)
    return ExperimentConfig(**merged)


def run_algorithm(algorithm: str, fid: str, seed: int, iterations: int = 1000, population: int = 50,
                  pf: float = 0.7, distance_scale: str = "raw") -> RunRecord:
    spec = benchmarks.get(fid).spec
    if algorithm == "sso":
        return sso_run(spec, SsoParams(population, iterations, pf, seed, distance_scale))
    if algorithm == "pso":
        return pso_run(spec, PsoParams(population_size=population, max_iterations=iterations, seed=seed))
    if algorithm == "abc":
        return abc_run(spec, AbcParams(colony_size=population, max_iterations=iterations, seed=seed))
    raise ConfigError(f"unknown algorithm id {algorithm!r}")


@dataclass
class ComparisonTable:
    summaries: dict = field(default_factory=dict)  # (fid, alg) -> RunSummary
    pvalues: dict = field(default_factory=dict)  # (fid, "sso-pso") -> p
    finals: dict = field(default_factory=dict)  # (fid, alg) -> list of final bests

    def summary(self, fid: str, alg: str) -> RunSummary:
        return self.summaries[(fid, alg)]


def _header(cfg: ExperimentConfig, **extra) -> list:
    lines = [f"# config_digest={cfg.digest()} base_seed={cfg.base_seed}"]
    if extra:
        lines.append("# " + " ".join(f"{k}={v}" for k, v in extra.items()))
    return lines


def format_convergence_csv(record: RunRecord, comments: Iterable[str] = ()) -> str:
    """``iteration,best_so_far`` text; rows are iterations 1..T (``0`` for T = 0)."""
    trace = np.asarray(record.best_so_far_trace)
    lines = list(comments)
    lines.append("iteration,best_so_far")
    if record.iterations == 0:
        lines.append(f"0,{fmt(trace[0])}")
    else:
        lines.extend(f"{k},{fmt(v)}" for k, v in enumerate(trace, 1))
    return "\n".join(lines) + "\n"


def write_convergence_csv(record: RunRecord, path, comments: Iterable[str] = ()) -> Path:
    path = Path(path)
    path.write_text(format_convergence_csv(record, comments))
    return path


def read_csv_rows(path) -> list:
    """Data rows (header and comments stripped) as lists of strings."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append(line.split(","))
    return rows[1:]


def _cell(args):
    fid, alg, k, cfg = args
    seed = cfg.base_seed + k
    try:
        rec = run_algorithm(alg, fid, seed, cfg.iterations, cfg.population, cfg.pf, cfg.distance_scale)
    except Exception as exc:
        raise CampaignError(f"cell function={fid} algorithm={alg} run={k} (seed {seed}) failed: {exc}") from exc
    return fid, alg, k, rec


def run_campaign(cfg: ExperimentConfig, write: bool = True) -> ComparisonTable:
    """Execute every (function, algorithm, run) cell; run ``k`` uses seed ``base_seed + k``."""
    cells = [(fid, alg, k, cfg) for fid in cfg.functions for alg in cfg.algorithms for k in range(cfg.runs)]
    out = Path(cfg.out)
    if write:
        (out / "traces").mkdir(parents=True, exist_ok=True)

    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_cell, cells, chunksize=max(1, len(cells) // (8 * cfg.jobs))))
    else:
        results = []
        for i, cell in enumerate(cells, 1):
            results.append(_cell(cell))
            if i % cfg.runs == 0:
                log.info("finished %s/%s (%d/%d cells)", cell[0], cell[1], i, len(cells))

    table = ComparisonTable()
    results.sort(key=lambda r: (cfg.functions.index(r[0]), cfg.algorithms.index(r[1]), r[2]))
    for fid, alg, k, rec in results:
        table.finals.setdefault((fid, alg), []).append(rec.best_fitness)
        if write:
            name = out / "traces" / f"{fid}_{alg}_{k}.csv"
            header = _header(cfg, function=fid, algorithm=alg, run=k, seed=cfg.base_seed + k)
            write_convergence_csv(rec, name, header)

    for fid in cfg.functions:
        for alg in cfg.algorithms:
            table.summaries[(fid, alg)] = summarize(table.finals[(fid, alg)])
        for a, b in PAIRS:
            if a in cfg.algorithms and b in cfg.algorithms:
                table.pvalues[(fid, f"{a}-{b}")] = wilcoxon_ranksum(table.finals[(fid, a)], table.finals[(fid, b)])

    if write:
        _write_tables(table, cfg, out)
    return table


def _write_tables(table: ComparisonTable, cfg: ExperimentConfig, out: Path):
    lines = _header(cfg) + ["function,algorithm,ab,mb,sd"]
    for (fid, alg), s in table.summaries.items():
        lines.append(f"{fid},{alg},{fmt(s.ab)},{fmt(s.mb)},{fmt(s.sd)}")
    (out / "summary.csv").write_text("\n".join(lines) + "\n")

    lines = _header(cfg) + ["function,pair,p"]
    for (fid, pair), p in table.pvalues.items():
        lines.append(f"{fid},{pair},{fmt(p)}")
    (out / "pvalues.csv").write_text("\n".join(lines) + "\n")

