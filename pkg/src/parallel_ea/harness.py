"""Experiment runner: repetition sweeps, CSV reporting, bound checks.

All randomness flows from one master seed; run i of lambda-index j always
gets the stream (master, j, i), so reruns are byte-identical regardless of
worker scheduling.  Output is CSV plus JSON summaries; plotting is left to
external tools.
"""

from __future__ import annotations

import csv
import json
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import log
from typing import Optional, Sequence

from .algorithms import (
    ONE_PLUS_LAMBDA_ADAPTIVE,
    ONE_PLUS_LAMBDA_FIXED,
    RLS,
    AlgoConfig,
    run_one_plus_lambda,
    run_rls,
)
from .objectives.registry import make_objective
from .rng import derive_rng, derive_run_seed
from .theory.bounds import BoundSpec, get_bound, ln_plus
from .variation import resolve_p

CSV_COLUMNS = [
    "run_id",
    "problem",
    "n",
    "lambda",
    "algo",
    "p_mode",
    "seed",
    "evaluations",
    "generations",
    "hit_target",
    "first_hit_evaluation",
    "best_fitness",
]

WORKERS_ENV = "PARALLEL_EA_WORKERS"


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentSpec:
    """One experiment: an objective, an algorithm, repetitions per lambda."""

    objective: dict  # {"name", "n", optional params, optional "seed"}
    algorithm: dict  # {"algorithm", optional "p", "budget"}
    repetitions: int
    lambdas: list[int]
    target: str = "global"
    bounds: list[str] = field(default_factory=list)
    output: Optional[str] = None
    master_seed: int = 0

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        if not self.lambdas or any(l < 1 for l in self.lambdas):
            raise ConfigError("every lambda must be >= 1")
        if "name" not in self.objective or "n" not in self.objective:
            raise ConfigError("objective spec needs 'name' and 'n'")
        if "algorithm" not in self.algorithm:
            raise ConfigError("algorithm spec needs 'algorithm'")
        for bound_id in self.bounds:
            get_bound(bound_id)  # raises on unknown ids

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls(**json.loads(text))

    def to_json(self) -> str:
        return json.dumps(
            {
                "objective": self.objective,
                "algorithm": self.algorithm,
                "repetitions": self.repetitions,
                "lambdas": self.lambdas,
                "target": self.target,
                "bounds": self.bounds,
                "output": self.output,
                "master_seed": self.master_seed,
            },
            indent=2,
        )


@dataclass
class LambdaStats:
    lam: int
    runs: int
    hit_rate: float
    mean_evaluations: float
    median_evaluations: float
    min_evaluations: int
    max_evaluations: int
    mean_generations: float
    median_generations: float
    min_generations: int
    max_generations: int
    bound_values: dict = field(default_factory=dict)
    bound_ratios: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SweepSummary:
    spec_problem: str
    n: int
    algo: str
    master_seed: int
    per_lambda: list[LambdaStats]

    def to_dict(self) -> dict:
        return {
            "problem": self.spec_problem,
            "n": self.n,
            "algo": self.algo,
            "master_seed": self.master_seed,
            "per_lambda": [s.to_dict() for s in self.per_lambda],
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def table(self) -> list[dict]:
        """Mean evaluations / generations vs lambda, ready for plotting."""
        rows = []
        for s in self.per_lambda:
            denom = s.lam * self.n / ln_plus(s.lam) + self.n * log(self.n)
            rows.append(
                {
                    "lambda": s.lam,
                    "mean_evaluations": s.mean_evaluations,
                    "mean_generations": s.mean_generations,
                    "hit_rate": s.hit_rate,
                    "normalised_mean_evaluations": s.mean_evaluations / denom,
                }
            )
        return rows


_OBJECTIVE_CACHE: dict = {}


def _build_objective(objective_spec: dict, target: str):
    key = (json.dumps(objective_spec, sort_keys=True), target)
    if key not in _OBJECTIVE_CACHE:
        params = {k: v for k, v in objective_spec.items() if k not in ("name", "n")}
        _OBJECTIVE_CACHE[key] = make_objective(
            objective_spec["name"], int(objective_spec["n"]), target=target, **params
        )
    return _OBJECTIVE_CACHE[key]


def _execute_run(task: dict) -> dict:
    """Worker entry point: rebuilds everything from plain data, runs once."""
    obj = _build_objective(task["objective"], task["target"])
    algo = task["algorithm"]
    name = algo["algorithm"]
    lam = task["lam"]
    n = obj.n
    p = algo.get("p")
    if p is not None:
        p = resolve_p(p, n)
    budget = int(algo.get("budget", 10**9))
    seed = task["seed"]
    cfg = AlgoConfig(algorithm=name, n=n, lam=lam, p=p, budget=budget, seed=seed)
    rng = derive_rng(seed)
    if name == RLS:
        if lam != 1:
            raise ConfigError("rls is sequential; use lambda = 1")
        record = run_rls(cfg, obj, rng)
    elif name in (ONE_PLUS_LAMBDA_FIXED, ONE_PLUS_LAMBDA_ADAPTIVE):
        record = run_one_plus_lambda(cfg, obj, rng)
    else:
        raise ConfigError(f"harness cannot run algorithm {name!r}")
    return {
        "run_id": task["run_id"],
        "problem": obj.name,
        "n": n,
        "lambda": lam,
        "algo": name,
        "p_mode": cfg.p_mode,
        "seed": seed,
        "evaluations": record.evaluations_used,
        "generations": record.generations_used,
        "hit_target": record.hit_target,
        "first_hit_evaluation": record.first_hit_evaluation,
        "best_fitness": record.best_fitness,
    }


def _format_row(row: dict) -> list[str]:
    out = []
    for col in CSV_COLUMNS:
        v = row[col]
        if v is None:
            out.append("")
        elif isinstance(v, bool):
            out.append("true" if v else "false")
        else:
            out.append(repr(v) if isinstance(v, float) else str(v))
    return out


def append_rows(path: str, rows: Sequence[dict]) -> None:
    new_file = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if new_file:
            writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(_format_row(row))


def read_runs(path: str) -> list[dict]:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append(
                {
                    "run_id": rec["run_id"],
                    "problem": rec["problem"],
                    "n": int(rec["n"]),
                    "lambda": int(rec["lambda"]),
                    "algo": rec["algo"],
                    "p_mode": rec["p_mode"],
                    "seed": int(rec["seed"]),
                    "evaluations": int(rec["evaluations"]),
                    "generations": int(rec["generations"]),
                    "hit_target": rec["hit_target"] == "true",
                    "first_hit_evaluation": (
                        None if rec["first_hit_evaluation"] == "" else int(rec["first_hit_evaluation"])
                    ),
                    "best_fitness": float(rec["best_fitness"]),
                }
            )
    return rows


def _worker_count() -> int:
    return max(1, int(os.environ.get(WORKERS_ENV, "1")))


def run_experiment(spec: ExperimentSpec, workers: Optional[int] = None) -> SweepSummary:
    """R independent runs per lambda; rows appended to spec.output if set.

    Seeds derive from (master, lambda index, repetition index); the row
    order and all values are independent of the worker count.
    """
    workers = workers if workers is not None else _worker_count()
    tasks = []
    for li, lam in enumerate(spec.lambdas):
        for ri in range(spec.repetitions):
            tasks.append(
                {
                    "objective": spec.objective,
                    "algorithm": spec.algorithm,
                    "target": spec.target,
                    "lam": lam,
                    "seed": derive_run_seed(spec.master_seed, li, ri),
                    "run_id": f"{spec.master_seed}-{li}-{ri}",
                }
            )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_execute_run, tasks, chunksize=8))
    else:
        rows = [_execute_run(t) for t in tasks]

    if spec.output:
        append_rows(spec.output, rows)

    per_lambda = []
    for lam in spec.lambdas:
        group = [r for r in rows if r["lambda"] == lam]
        evals = [r["evaluations"] for r in group]
        gens = [r["generations"] for r in group]
        stats = LambdaStats(
            lam=lam,
            runs=len(group),
            hit_rate=sum(r["hit_target"] for r in group) / len(group),
            mean_evaluations=statistics.fmean(evals),
            median_evaluations=statistics.median(evals),
            min_evaluations=min(evals),
            max_evaluations=max(evals),
            mean_generations=statistics.fmean(gens),
            median_generations=statistics.median(gens),
            min_generations=min(gens),
            max_generations=max(gens),
        )
        n = int(spec.objective["n"])
        for bound_id in spec.bounds:
            bound = get_bound(bound_id)
            kwargs = {"n": n, "lam": lam, "delta": 0.5}
            value = bound(**kwargs)
            stats.bound_values[bound_id] = value
            stats.bound_ratios[bound_id] = stats.mean_evaluations / value if value else None
        per_lambda.append(stats)

    return SweepSummary(
        spec_problem=spec.objective["name"],
        n=int(spec.objective["n"]),
        algo=spec.algorithm["algorithm"],
        master_seed=spec.master_seed,
        per_lambda=per_lambda,
    )


def sweep_cutoff(spec: ExperimentSpec, workers: Optional[int] = None) -> SweepSummary:
    """run_experiment plus the mean-vs-lambda tables used for cut-off plots."""
    return run_experiment(spec, workers=workers)


def check_lower_bound(
    rows: Sequence[dict] | str,
    bound: BoundSpec | str,
    safety: float = 1.0,
    delta: float = 0.5,
) -> dict:
    """Count runs that hit the target strictly before safety * bound value.

    For the explicit-constant bounds this count must be zero; asymptotic
    shapes are rejected because a constant-1 curve cannot gate pass/fail.
    """
    if isinstance(rows, str):
        rows = read_runs(rows)
    if isinstance(bound, str):
        bound = get_bound(bound)
    if bound.asymptotic_only:
        raise ConfigError(
            f"bound {bound.id!r} is asymptotic-only (constant 1); it cannot be "
            "used as an empirical pass/fail threshold"
        )
    violations = []
    for row in rows:
        kwargs = {"n": row["n"], "lam": row["lambda"], "delta": delta}
        threshold = safety * bound(**{k: kwargs[k] for k in bound.params})
        fh = row["first_hit_evaluation"]
        if fh is not None and fh < threshold:
            violations.append({"run_id": row["run_id"], "first_hit": fh, "threshold": threshold})
    return {
        "bound": bound.id,
        "safety": safety,
        "rows_checked": len(rows),
        "violations": len(violations),
        "violating_runs": violations[:25],
        "pass": not violations,
    }
