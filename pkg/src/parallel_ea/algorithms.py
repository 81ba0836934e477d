"""Search algorithms over the lambda-parallel unary unbiased framework.

The generic runner enforces the framework's information flow: the lambda
variations of a round are chosen from the history of *previous* rounds
only.  The (1+lambda) EA and RLS are the concrete instances analysed by
the theory module's bound curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .bitstring import BitString, random_bitstring
from .objectives.base import Objective
from .rng import derive_rng
from .variation import UnaryOperator, apply, mirrored, single_bit, standard_mutation

ONE_PLUS_LAMBDA_FIXED = "one-plus-lambda-fixed"
ONE_PLUS_LAMBDA_ADAPTIVE = "one-plus-lambda-adaptive"
RLS = "rls"
GENERIC_PARALLEL = "generic-parallel"

_ALGORITHMS = (ONE_PLUS_LAMBDA_FIXED, ONE_PLUS_LAMBDA_ADAPTIVE, RLS, GENERIC_PARALLEL)


class ContractViolationError(RuntimeError):
    """A parallel policy asked for information its round may not see."""


@dataclass(frozen=True)
class AlgoConfig:
    algorithm: str
    n: int
    lam: int = 1
    p: Optional[float] = None  # fixed-rate variant; defaults to 1/n
    budget: int = 10**9
    seed: int = 0

    def __post_init__(self) -> None:
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.lam < 1:
            raise ValueError("lambda must be >= 1")
        if self.budget < self.lam:
            raise ValueError("budget must cover at least one batch of lambda evaluations")
        if self.algorithm == ONE_PLUS_LAMBDA_FIXED:
            p = self.p if self.p is not None else 1.0 / self.n
            if not 0.0 < p < 1.0:
                raise ValueError(f"fixed mutation rate must lie in (0, 1), got {p}")

    @property
    def p_mode(self) -> str:
        if self.algorithm == ONE_PLUS_LAMBDA_ADAPTIVE:
            return "adaptive"
        if self.algorithm == RLS:
            return "single-bit"
        if self.algorithm == ONE_PLUS_LAMBDA_FIXED:
            p = self.p if self.p is not None else 1.0 / self.n
            return f"fixed:{p:.6g}"
        return "policy"


@dataclass
class RunRecord:
    evaluations_used: int
    generations_used: int
    hit_target: bool
    best_fitness: float
    first_hit_evaluation: Optional[int]
    seed: int

    def __post_init__(self) -> None:
        if self.hit_target and self.first_hit_evaluation is not None:
            assert self.first_hit_evaluation <= self.evaluations_used


@dataclass
class PotentialTracker:
    """Running minimum of min(#zeros, #ones) over everything queried.

    With mirrored batches the zero- and one-sided minima coincide.
    """

    s0: Optional[int] = None
    s1: Optional[int] = None
    trajectory: list[int] = field(default_factory=list)

    @property
    def s(self) -> Optional[int]:
        if self.s0 is None:
            return None
        return min(self.s0, self.s1)

    def update(self, batch: Sequence[BitString]) -> "PotentialTracker":
        for x in batch:
            zeros = x.count_zeros()
            ones = x.n - zeros
            self.s0 = zeros if self.s0 is None else min(self.s0, zeros)
            self.s1 = ones if self.s1 is None else min(self.s1, ones)
        self.trajectory.append(self.s)
        return self


def track_potential(tracker: PotentialTracker, batch: Sequence[BitString]) -> PotentialTracker:
    return tracker.update(batch)


def adaptive_rate(i: int, n: int, lam: int) -> float:
    """Zero-count-adaptive mutation rate max{ln(lam)/(n ln(en/i)), 1/n}.

    i is the number of zeros in the current search point; i = 0 means the
    caller is already at the optimum and must not mutate.
    """
    if not 1 <= i <= n:
        raise ValueError(f"zero count i must lie in [1, n], got i={i}")
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    return max(math.log(lam) / (n * math.log(math.e * n / i)), 1.0 / n)


def _is_better(direction: str):
    if direction == "max":
        return lambda a, b: a > b
    return lambda a, b: a < b


def _argbest_uniform(fitnesses: Sequence[float], direction: str, rng: np.random.Generator) -> int:
    best = max(fitnesses) if direction == "max" else min(fitnesses)
    idx = [i for i, f in enumerate(fitnesses) if f == best]
    return idx[int(rng.integers(len(idx)))] if len(idx) > 1 else idx[0]


def _zero_count_estimate(obj: Objective, x: BitString, best_f: float) -> int:
    """Adaptive-rate state: zeros for onemax, n - round(best fitness) otherwise.

    The general rule is a heuristic extension of the onemax analysis; it
    coincides with the zero count there.
    """
    if obj.name == "onemax":
        return max(1, x.count_zeros())
    n = obj.n
    return min(n, max(1, n - round(best_f)))


def run_one_plus_lambda(
    cfg: AlgoConfig,
    obj: Objective,
    rng: Optional[np.random.Generator] = None,
    initial: Optional[BitString] = None,
    on_generation: Optional[Callable[[int, BitString, float], None]] = None,
) -> RunRecord:
    """(1+lambda) EA with standard bit mutation, fixed or adaptive rate.

    Initialisation is one uniform batch of lambda points, counted against
    the budget; `initial` forces a single-point start (1 evaluation) for
    tests.  Ties among best offspring break uniformly at random, and the
    offspring replaces the parent when its fitness is at least as good.
    """
    if cfg.algorithm not in (ONE_PLUS_LAMBDA_FIXED, ONE_PLUS_LAMBDA_ADAPTIVE):
        raise ValueError(f"config is for {cfg.algorithm}, not a (1+lambda) EA")
    if obj.n != cfg.n:
        raise ValueError("objective dimension does not match config")
    rng = rng if rng is not None else derive_rng(cfg.seed)
    n, lam = cfg.n, cfg.lam
    adaptive = cfg.algorithm == ONE_PLUS_LAMBDA_ADAPTIVE
    p_fixed = cfg.p if cfg.p is not None else 1.0 / n
    better = _is_better(obj.direction)

    if initial is not None:
        batch = [initial]
    else:
        batch = [random_bitstring(n, rng) for _ in range(lam)]
    fits = [obj.evaluate(y) for y in batch]
    evals = len(batch)
    first_hit = None
    for k, y in enumerate(batch):
        if obj.target.contains(y):
            first_hit = k + 1
            break
    best_idx = _argbest_uniform(fits, obj.direction, rng)
    x, fx = batch[best_idx], fits[best_idx]
    gens = 0
    if on_generation is not None:
        on_generation(0, x, fx)

    while first_hit is None and evals + lam <= cfg.budget:
        if adaptive:
            i = _zero_count_estimate(obj, x, fx)
            p = adaptive_rate(i, n, lam)
        else:
            p = p_fixed
        op = standard_mutation(p)
        offspring = [apply(op, x, rng) for _ in range(lam)]
        ofits = [obj.evaluate(y) for y in offspring]
        gens += 1
        for k, y in enumerate(offspring):
            if obj.target.contains(y):
                first_hit = evals + k + 1
                break
        evals += lam
        z_idx = _argbest_uniform(ofits, obj.direction, rng)
        if not better(fx, ofits[z_idx]):
            x, fx = offspring[z_idx], ofits[z_idx]
        if on_generation is not None:
            on_generation(gens, x, fx)

    return RunRecord(
        evaluations_used=evals,
        generations_used=gens,
        hit_target=first_hit is not None,
        best_fitness=fx,
        first_hit_evaluation=first_hit,
        seed=cfg.seed,
    )


def run_rls(
    cfg: AlgoConfig,
    obj: Objective,
    rng: Optional[np.random.Generator] = None,
    initial: Optional[BitString] = None,
    on_generation: Optional[Callable[[int, BitString, float], None]] = None,
) -> RunRecord:
    """Randomised local search: single-bit flips, accept on fitness >= current."""
    if cfg.algorithm != RLS:
        raise ValueError(f"config is for {cfg.algorithm}, not rls")
    if obj.n != cfg.n:
        raise ValueError("objective dimension does not match config")
    rng = rng if rng is not None else derive_rng(cfg.seed)
    better = _is_better(obj.direction)
    op = single_bit()

    x = initial if initial is not None else random_bitstring(cfg.n, rng)
    fx = obj.evaluate(x)
    evals = 1
    gens = 0
    first_hit = 1 if obj.target.contains(x) else None
    if on_generation is not None:
        on_generation(0, x, fx)

    while first_hit is None and evals + 1 <= cfg.budget:
        y = apply(op, x, rng)
        fy = obj.evaluate(y)
        evals += 1
        gens += 1
        if obj.target.contains(y):
            first_hit = evals
        if not better(fx, fy):
            x, fx = y, fy
        if on_generation is not None:
            on_generation(gens, x, fx)

    return RunRecord(
        evaluations_used=evals,
        generations_used=gens,
        hit_target=first_hit is not None,
        best_fitness=fx,
        first_hit_evaluation=first_hit,
        seed=cfg.seed,
    )


class HistoryView:
    """Read-only archive of all points evaluated in completed rounds.

    Policies receive this snapshot when choosing the next round's lambda
    variations, so by construction they cannot see same-round results.
    Out-of-range parent indices raise ContractViolationError.
    """

    def __init__(self, points: list[BitString], fitnesses: list[float], rounds: int):
        self._points = points
        self._fitnesses = fitnesses
        self._rounds = rounds

    def __len__(self) -> int:
        return len(self._points)

    @property
    def rounds(self) -> int:
        return self._rounds

    def point(self, i: int) -> BitString:
        self._check(i)
        return self._points[i]

    def fitness(self, i: int) -> float:
        self._check(i)
        return self._fitnesses[i]

    def best_index(self, direction: str = "max") -> int:
        f = self._fitnesses
        best = max(f) if direction == "max" else min(f)
        return f.index(best)

    def _check(self, i: int) -> None:
        if not 0 <= i < len(self._points):
            raise ContractViolationError(
                f"policy asked for history index {i}, but only {len(self._points)} "
                "points from previous rounds are visible"
            )


Policy = Callable[[HistoryView, np.random.Generator], list[tuple[int, UnaryOperator]]]


def run_generic_parallel(
    policy: Policy,
    cfg: AlgoConfig,
    obj: Objective,
    rng: Optional[np.random.Generator] = None,
    mirror: bool = False,
    tracker: Optional[PotentialTracker] = None,
) -> RunRecord:
    """Generic lambda-parallel unary unbiased runner.

    Each round the policy maps the history of previous rounds to lambda
    (parent index, operator) pairs; the offspring are then generated and
    evaluated as one batch.  With mirror=True every query also reveals its
    complement for free (tracked and usable as a parent, not counted as an
    evaluation).
    """
    if obj.n != cfg.n:
        raise ValueError("objective dimension does not match config")
    rng = rng if rng is not None else derive_rng(cfg.seed)
    n, lam = cfg.n, cfg.lam

    archive_points: list[BitString] = []
    archive_fits: list[float] = []
    evals = 0
    gens = 0
    first_hit = None

    def ingest(batch: list[BitString], free: list[BitString]) -> None:
        nonlocal evals, first_hit
        for k, y in enumerate(batch):
            if first_hit is None and obj.target.contains(y):
                first_hit = evals + k + 1
        evals += len(batch)
        for y in free:
            # free complements hit at the cost already paid for the batch
            if first_hit is None and obj.target.contains(y):
                first_hit = evals
        for y in batch + free:
            archive_points.append(y)
            archive_fits.append(obj.evaluate(y))
        if tracker is not None:
            tracker.update(batch + free)

    batch = [random_bitstring(n, rng) for _ in range(lam)]
    free = [y.complement() for y in batch] if mirror else []
    ingest(batch, free)

    while first_hit is None and evals + lam <= cfg.budget:
        view = HistoryView(list(archive_points), list(archive_fits), gens + 1)
        choices = policy(view, rng)
        if len(choices) != lam:
            raise ContractViolationError(
                f"policy must return exactly lambda={lam} choices, got {len(choices)}"
            )
        batch = []
        free = []
        for parent_idx, op in choices:
            view._check(parent_idx)
            parent = archive_points[parent_idx]
            if mirror:
                y, ybar = mirrored(op, parent, rng)
                batch.append(y)
                free.append(ybar)
            else:
                batch.append(apply(op, parent, rng))
        gens += 1
        ingest(batch, free)

    best = max(archive_fits) if obj.direction == "max" else min(archive_fits)
    return RunRecord(
        evaluations_used=evals,
        generations_used=gens,
        hit_target=first_hit is not None,
        best_fitness=best,
        first_hit_evaluation=first_hit,
        seed=cfg.seed,
    )


def make_best_so_far_policy(lam: int, op: UnaryOperator, direction: str = "max") -> Policy:
    """Policy re-mutating the best archived point with a fixed operator."""

    def policy(view: HistoryView, rng: np.random.Generator) -> list[tuple[int, UnaryOperator]]:
        best = view.best_index(direction)
        return [(best, op)] * lam

    return policy
