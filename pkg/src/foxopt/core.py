"""Problem abstraction, RNG helpers, samplers and the shared estimator base."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from sklearn.base import BaseEstimator

LEVY_INDEX = 1.5


@dataclass(frozen=True)
class BoundedProblem:
    """A box-constrained minimization problem.

    ``objective`` maps a 1-D vector to a float. ``batch``, when given, maps an
    ``(n, dim)`` array to ``n`` values and must agree with ``objective`` row by
    row; optimizers use it to avoid a Python loop per agent.
    """

    name: str
    dim: int
    lower: np.ndarray
    upper: np.ndarray
    objective: Callable[[np.ndarray], float]
    known_optimum: Optional[float] = None
    batch: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        lower = np.broadcast_to(np.asarray(self.lower, dtype=float), (self.dim,)).copy()
        upper = np.broadcast_to(np.asarray(self.upper, dtype=float), (self.dim,)).copy()
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        check_problem(self)

    def __call__(self, x) -> float:
        return float(self.objective(np.asarray(x, dtype=float)))

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.batch is not None:
            return np.asarray(self.batch(X), dtype=float).reshape(len(X))
        return np.array([self.objective(row) for row in X], dtype=float)


@dataclass(frozen=True)
class OptimizerConfig:
    epochs: int = 500
    population: int = 30
    seed: int = 0

    def __post_init__(self):
        check_config(self.epochs, self.population, self.seed)


@dataclass
class RunTrace:
    """Outcome of one optimizer run.

    ``best_per_epoch[k]`` is the best-so-far fitness after epoch ``k``.
    ``info`` carries algorithm-specific counters (e.g. opposition moves).
    """

    best_per_epoch: np.ndarray
    final_best_x: np.ndarray
    final_best_f: float
    evaluations: int
    wall_seconds: float
    info: dict = field(default_factory=dict)

    @property
    def epochs(self) -> int:
        return len(self.best_per_epoch)

    @property
    def seconds_per_epoch(self) -> float:
        return self.wall_seconds / max(self.epochs, 1)


# -- validation ---------------------------------------------------------------


def check_problem(problem: BoundedProblem) -> None:
    if not isinstance(problem.dim, (int, np.integer)) or problem.dim < 1:
        raise ValueError(f"dim must be a positive integer, got {problem.dim!r}")
    if problem.lower.shape != (problem.dim,) or problem.upper.shape != (problem.dim,):
        raise ValueError("bounds must have length dim")
    if not np.all(np.isfinite(problem.lower)) or not np.all(np.isfinite(problem.upper)):
        raise ValueError("bounds must be finite")
    if not np.all(problem.lower < problem.upper):
        raise ValueError("every lower bound must be strictly below its upper bound")
    if not callable(problem.objective):
        raise TypeError("objective must be callable")


def check_config(epochs, population, seed) -> None:
    if not isinstance(epochs, (int, np.integer)) or epochs < 0:
        raise ValueError(f"epochs must be a non-negative integer, got {epochs!r}")
    if not isinstance(population, (int, np.integer)) or population < 1:
        raise ValueError(f"population must be a positive integer, got {population!r}")
    if seed is not None and (not isinstance(seed, (int, np.integer)) or seed < 0):
        raise ValueError(f"seed must be a non-negative integer, got {seed!r}")


def check_position(x, problem: BoundedProblem) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (problem.dim,):
        raise ValueError(f"expected vectors of length {problem.dim}, got shape {x.shape}")
    return x


# -- randomness ---------------------------------------------------------------


def make_rng(seed) -> np.random.Generator:
    """One independent stream per trial; ``seed`` is usually base_seed + trial."""
    return np.random.default_rng(seed)


def uniform(rng: np.random.Generator, lo: float, hi: float, n: int) -> np.ndarray:
    """``n`` independent draws from [lo, hi)."""
    if lo > hi:
        raise ValueError(f"invalid range: lo={lo} > hi={hi}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if lo == hi:
        return np.full(n, float(lo))
    out = rng.uniform(lo, hi, n)
    # float rounding of lo + (hi-lo)*u can land on hi
    return np.where(out >= hi, np.nextafter(hi, lo), out)


def _mantegna_sigma(index: float) -> float:
    num = math.gamma(1 + index) * math.sin(math.pi * index / 2)
    den = math.gamma((1 + index) / 2) * index * 2 ** ((index - 1) / 2)
    return (num / den) ** (1 / index)


_SIGMA_U = _mantegna_sigma(LEVY_INDEX)


def levy_flight(rng: np.random.Generator, n, index: float = LEVY_INDEX) -> np.ndarray:
    """Heavy-tailed Lévy-stable steps via Mantegna's algorithm.

    ``n`` may be an int or a shape tuple. Steps are ``u / |v|**(1/index)`` with
    ``u ~ N(0, sigma_u**2)`` and ``v ~ N(0, 1)``.
    """
    size = (n,) if np.isscalar(n) else tuple(n)
    if any(s < 1 for s in size):
        raise ValueError("levy_flight needs a positive count")
    sigma = _SIGMA_U if index == LEVY_INDEX else _mantegna_sigma(index)
    u = rng.normal(0.0, sigma, size)
    v = rng.normal(0.0, 1.0, size)
    return u / np.abs(v) ** (1.0 / index)


def clamp(x, problem: BoundedProblem) -> np.ndarray:
    """Project onto the problem's box. Works on a vector or a stack of vectors."""
    x = check_position(x, problem)
    return np.clip(x, problem.lower, problem.upper)


def init_population(rng: np.random.Generator, problem: BoundedProblem, n: int) -> np.ndarray:
    return rng.uniform(problem.lower, problem.upper, (n, problem.dim))


# -- evaluation bookkeeping ---------------------------------------------------


class CountingObjective:
    """Wraps a problem and counts every objective evaluation (one per row)."""

    def __init__(self, problem: BoundedProblem):
        self.problem = problem
        self.count = 0

    def __call__(self, X) -> np.ndarray:
        X = np.atleast_2d(X)
        self.count += len(X)
        return self.problem.evaluate_many(X)


class Stopwatch:
    def __enter__(self):
        self._t0 = time.perf_counter()
        self.seconds = 0.0
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self._t0
        return False


# -- estimator base -----------------------------------------------------------


class BaseOptimizer(BaseEstimator):
    """sklearn-style wrapper: hyperparameters in ``__init__``, ``fit(problem)``.

    After fitting, ``best_x_``, ``best_f_`` and ``trace_`` are available.
    """

    def _run(self, problem: BoundedProblem) -> RunTrace:
        raise NotImplementedError

    def fit(self, problem: BoundedProblem, y=None):
        if not isinstance(problem, BoundedProblem):
            raise TypeError("fit expects a BoundedProblem")
        trace = self._run(problem)
        self.trace_ = trace
        self.best_x_ = trace.final_best_x
        self.best_f_ = trace.final_best_f
        self.n_evaluations_ = trace.evaluations
        return self

    def minimize(self, problem: BoundedProblem) -> RunTrace:
        return self.fit(problem).trace_

