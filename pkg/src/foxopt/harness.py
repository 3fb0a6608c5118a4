"""Experiment runner: (algorithm x problem x trial) grids, aggregates, scalability.

Trial ``i`` of every cell always runs with seed ``base_seed + i``, so results
do not depend on execution order or on the number of worker processes.
"""

from __future__ import annotations

import configparser
import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import benchmarks, engineering
from .core import BoundedProblem, OptimizerConfig, RunTrace
from .fox import fox_run
from .ifox import ifox_run
from .stats import ScoreMatrix, compare

log = logging.getLogger(__name__)

ALGORITHMS = {"fox": fox_run, "ifox": ifox_run}
SCALABILITY_DIMS = (10, 30, 50, 100)
SCALABILITY_EPOCHS = (50, 100, 250, 500, 1000)
# shifted + rotated Rastrigin; plain Rastrigin's minimum sits at the origin,
# which both optimizers' contraction toward zero hits exactly
SCALABILITY_PROBLEM = "CX1"


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    algorithms: tuple = ("fox", "ifox")
    problems: tuple = ()
    epochs: int = 500
    population: int = 30
    trials: int = 30
    seed: int = 0
    output_dir: Optional[str] = "results"
    aggregation: str = "average"
    dim: Optional[int] = None
    jobs: Optional[int] = None

    def __post_init__(self):
        self.algorithms = tuple(a.strip().lower() for a in self.algorithms)
        self.problems = tuple(p.strip() for p in self.problems)
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(f"unknown algorithms {unknown}; choose from {sorted(ALGORITHMS)}")
        if not self.algorithms or not self.problems:
            raise ConfigError("at least one algorithm and one problem are required")
        if self.aggregation != "average":
            raise ConfigError("only 'average' aggregation is supported")
        for key in ("epochs", "population", "trials"):
            v = getattr(self, key)
            if not isinstance(v, int) or v < (0 if key == "epochs" else 1):
                raise ConfigError(f"{key} must be a {'non-negative' if key == 'epochs' else 'positive'} integer")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        for p in self.problems:
            try:
                prob = resolve_problem(p, self.dim)
                # catch dimension-dependent failures before any trial runs
                prob.evaluate_many(0.5 * (prob.lower + prob.upper))
            except (KeyError, ValueError) as exc:
                raise ConfigError(exc.args[0] if exc.args else str(exc)) from exc


def resolve_problem(name: str, dim: Optional[int] = None, seed: int = 0) -> BoundedProblem:
    """Benchmark TID / base name, or engineering problem name (penalized)."""
    try:
        return benchmarks.get_problem(name, dim, seed)
    except KeyError:
        pass
    try:
        return engineering.get_engineering(name).as_problem()
    except KeyError:
        raise KeyError(f"unknown problem {name!r}") from None


def run_trial(algorithm: str, problem: str, epochs: int, population: int, seed: int, dim: Optional[int] = None) -> RunTrace:
    """One seeded run; module-level so worker processes can pickle it."""
    p = resolve_problem(problem, dim, seed)
    trace = ALGORITHMS[algorithm](p, OptimizerConfig(epochs, population, seed))
    trace.info.pop("final_population", None)
    return trace


def _final_violations(problem: str, traces) -> Optional[list]:
    try:
        eng = engineering.get_engineering(problem)
    except KeyError:
        return None
    return [eng.violations(t.final_best_x).tolist() for t in traces]


def _run_all(tasks: list, jobs: Optional[int]) -> list:
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        return [run_trial(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_trial, *zip(*tasks)))


@dataclass
class CellResult:
    algorithm: str
    problem: str
    finals: list
    mean_curve: list
    pt_seconds: float
    evaluations: float
    # engineering problems only: per-trial constraint violations of the final best
    violations: Optional[list] = None
    avg: float = field(init=False)
    std: float = field(init=False)
    best: float = field(init=False)
    worst: float = field(init=False)

    def __post_init__(self):
        f = np.asarray(self.finals, dtype=float)
        self.avg = float(f.mean())
        self.std = _sample_std(f)
        self.best = float(f.min())
        self.worst = float(f.max())


def _sample_std(f: np.ndarray) -> float:
    # rescale first: squared deviations of near-zero finals (1e-170) underflow
    scale = float(np.max(np.abs(f))) if len(f) > 1 else 0.0
    if scale == 0.0 or not np.isfinite(scale):
        return float(f.std(ddof=1)) if len(f) > 1 else 0.0
    return scale * float((f / scale).std(ddof=1))


@dataclass
class ExperimentReport:
    config: dict
    cells: list

    def cell(self, algorithm: str, problem: str) -> CellResult:
        for c in self.cells:
            if c.algorithm == algorithm and c.problem == problem:
                return c
        raise KeyError(f"no cell for ({algorithm}, {problem})")

    @property
    def problems(self) -> list:
        return list(dict.fromkeys(c.problem for c in self.cells))

    @property
    def algorithms(self) -> list:
        return list(dict.fromkeys(c.algorithm for c in self.cells))

    def score_matrix(self) -> ScoreMatrix:
        return ScoreMatrix.from_records(
            [{"algorithm": c.algorithm, "problem": c.problem, "avg": c.avg} for c in self.cells]
        )

    def to_dict(self) -> dict:
        out = {"config": self.config, "cells": [asdict(c) for c in self.cells]}
        if len(self.algorithms) >= 2:
            out["stats"] = compare(self.score_matrix())
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentReport":
        cells = []
        for c in d["cells"]:
            keep = {k: c[k] for k in ("algorithm", "problem", "finals", "mean_curve", "pt_seconds", "evaluations")}
            keep["violations"] = c.get("violations")
            cells.append(CellResult(**keep))
        return cls(d["config"], cells)

    @classmethod
    def load(cls, path) -> "ExperimentReport":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


AGGREGATE_FIELDS = ("algorithm", "problem", "avg", "std", "best", "worst", "evaluations")


def aggregate_rows(cells: Sequence[CellResult]) -> list:
    return [{k: getattr(c, k) for k in AGGREGATE_FIELDS} for c in cells]


def _trace_path(out: Path, algorithm: str, problem: str) -> Path:
    return out / "traces" / f"{algorithm}__{problem}.csv"


def _write_csv(path: Path, fields: Sequence[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in (r[k] for k in fields)] if isinstance(r, dict) else r)


def _prepare_output(out) -> Path:
    out = Path(out)
    try:
        (out / "traces").mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    if not os.access(out, os.W_OK):
        raise OSError(f"output directory {out} is not writable")
    return out


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run every (algorithm, problem) cell for ``cfg.trials`` seeded trials.

    When ``cfg.output_dir`` is set, writes ``traces/<alg>__<problem>.csv``,
    ``aggregates.csv`` (deterministic columns only), ``timing.csv`` and
    ``report.json``.
    """
    out = _prepare_output(cfg.output_dir) if cfg.output_dir else None
    grid = [(a, p) for p in cfg.problems for a in cfg.algorithms]
    tasks = [(a, p, cfg.epochs, cfg.population, cfg.seed + i, cfg.dim) for a, p in grid for i in range(cfg.trials)]
    log.info("running %d trials over %d cells", len(tasks), len(grid))
    traces = _run_all(tasks, cfg.jobs)

    cells = []
    for k, (a, p) in enumerate(grid):
        cell_traces = traces[k * cfg.trials : (k + 1) * cfg.trials]
        curves = np.array([t.best_per_epoch for t in cell_traces]).reshape(cfg.trials, cfg.epochs)
        cells.append(
            CellResult(
                algorithm=a,
                problem=p,
                finals=[t.final_best_f for t in cell_traces],
                mean_curve=curves.mean(axis=0).tolist(),
                pt_seconds=float(np.mean([t.seconds_per_epoch for t in cell_traces])),
                evaluations=float(np.mean([t.evaluations for t in cell_traces])),
                violations=_final_violations(p, cell_traces),
            )
        )
        if out is not None:
            rows = ([i, e, float(v)] for i, t in enumerate(cell_traces) for e, v in enumerate(t.best_per_epoch, start=1))
            _write_csv(_trace_path(out, a, p), ("trial", "epoch", "best_f"), ([i, e, repr(v)] for i, e, v in rows))
            final_rows = ([i, repr(t.final_best_f), t.evaluations] for i, t in enumerate(cell_traces))
            _write_csv(out / "traces" / f"{a}__{p}__final.csv", ("trial", "final_best_f", "evaluations"), final_rows)

    report = ExperimentReport(config=asdict(cfg), cells=cells)
    if out is not None:
        _write_csv(out / "aggregates.csv", AGGREGATE_FIELDS, aggregate_rows(cells))
        _write_csv(out / "timing.csv", ("algorithm", "problem", "pt_seconds"),
                   ({"algorithm": c.algorithm, "problem": c.problem, "pt_seconds": c.pt_seconds} for c in cells))
        with open(out / "report.json", "w") as fh:
            json.dump(report.to_dict(), fh, indent=2)
    return report


def aggregates_from_traces(out, algorithm: str, problem: str) -> dict:
    """Recompute a cell's aggregates from its persisted per-trial files."""
    out = Path(out)
    with open(out / "traces" / f"{algorithm}__{problem}__final.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"no trials recorded for ({algorithm}, {problem})")
    finals = [float(r["final_best_f"]) for r in rows]
    evals = [int(r["evaluations"]) for r in rows]
    c = CellResult(algorithm, problem, finals, [], 0.0, float(np.mean(evals)))
    return {k: getattr(c, k) for k in AGGREGATE_FIELDS}


# -- convergence --------------------------------------------------------------


def emit_convergence(report: ExperimentReport, problem: str, path=None) -> list:
    """Long-format (algorithm, epoch, mean_best_f) rows for one problem."""
    cells = [c for c in report.cells if c.problem == problem]
    if not cells:
        raise KeyError(f"problem {problem!r} not in report")
    rows = [(c.algorithm, e, v) for c in cells for e, v in enumerate(c.mean_curve, start=1)]
    if path is not None:
        _write_csv(Path(path), ("algorithm", "epoch", "mean_best_f"), ([a, e, repr(float(v))] for a, e, v in rows))
    return rows


# -- scalability --------------------------------------------------------------


def relative_error(found: float, optimum: Optional[float]) -> Optional[float]:
    if optimum is None:
        return None
    return abs(found - optimum) / max(1.0, abs(optimum))


def run_scalability(
    problem: str = SCALABILITY_PROBLEM,
    dims: Sequence[int] = SCALABILITY_DIMS,
    epoch_grid: Sequence[int] = SCALABILITY_EPOCHS,
    trials: int = 30,
    algorithm: str = "ifox",
    population: int = 30,
    seed: int = 0,
    path=None,
) -> list:
    """Mean runtime and mean relative error for every (dim, epochs) cell.

    Runs are sequential in this process so timings are comparable across cells.
    ``rel_error`` is None when the problem has no known optimum.
    """
    if any(e < 1 for e in epoch_grid):
        raise ValueError("every epoch budget must be positive")
    if any(d < 1 for d in dims) or trials < 1:
        raise ValueError("dims and trials must be positive")
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    run = ALGORITHMS[algorithm]
    rows = []
    for dim in dims:
        for epochs in epoch_grid:
            times, errors = [], []
            for i in range(trials):
                p = resolve_problem(problem, dim, seed + i)
                trace = run(p, OptimizerConfig(epochs, population, seed + i))
                times.append(trace.wall_seconds)
                errors.append(relative_error(trace.final_best_f, p.known_optimum))
            rel = None if errors[0] is None else float(np.mean(errors))
            rows.append({"dim": dim, "epochs": epochs, "runtime_s": float(np.mean(times)), "rel_error": rel})
            log.info("dim=%d epochs=%d runtime=%.4fs rel_error=%s", dim, epochs, rows[-1]["runtime_s"], rel)
    if path is not None:
        _write_csv(
            Path(path),
            ("dim", "epochs", "runtime_s", "rel_error"),
            ([r["dim"], r["epochs"], repr(r["runtime_s"]), "NA" if r["rel_error"] is None else repr(r["rel_error"])] for r in rows),
        )
    return rows


# -- config file --------------------------------------------------------------


def _split(value: str) -> tuple:
    return tuple(v.strip() for v in value.replace("\n", ",").split(",") if v.strip())


def load_config(path=None, **overrides) -> ExperimentConfig:
    """Read an INI file's ``[experiment]`` section, then apply overrides.

    Keys: algorithms, problems (comma separated), epochs, population, trials,
    seed, output_dir, dim, jobs. ``None`` overrides are ignored.
    """
    values: dict = {}
    if path is not None:
        parser = configparser.ConfigParser()
        if not parser.read(path):
            raise ConfigError(f"cannot read config file {path}")
        if "experiment" not in parser:
            raise ConfigError("config file needs an [experiment] section")
        sec = parser["experiment"]
        try:
            for key in ("algorithms", "problems"):
                if key in sec:
                    values[key] = _split(sec[key])
            for key in ("epochs", "population", "trials", "seed", "dim", "jobs"):
                if key in sec:
                    values[key] = sec.getint(key)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for key in ("output_dir", "aggregation"):
            if key in sec:
                values[key] = sec[key].strip()
        extra = set(sec) - {"algorithms", "problems", "epochs", "population", "trials", "seed", "dim", "jobs", "output_dir", "aggregation"}
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)
