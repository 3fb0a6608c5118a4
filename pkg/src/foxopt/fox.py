"""The original FOX optimizer (red-fox hunting metaphor).

Each epoch every agent either exploits (jumps toward a scaled copy of the best
solution) or explores (random multiplicative walk around it) with probability
one half each.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    BaseOptimizer,
    BoundedProblem,
    CountingObjective,
    OptimizerConfig,
    RunTrace,
    Stopwatch,
    clamp,
    init_population,
    make_rng,
)

GRAVITY = 9.81
C1_RANGE = (0.0, 0.18)
C2_RANGE = (0.19, 0.82)
P_THRESHOLD = 0.18
A_VARIANTS = ("printed", "decreasing")


@dataclass
class FoxState:
    best_x: np.ndarray
    best_f: float
    c1: float
    c2: float
    epochs: int
    a_variant: str = "printed"
    time_st: Optional[np.ndarray] = None
    sp_s: Optional[np.ndarray] = None
    dist_st: Optional[np.ndarray] = None
    dist_fox_prey: Optional[np.ndarray] = None
    jump: float = 0.0
    a: float = 0.0
    mint: float = np.inf
    it: int = 0
    exploit_steps: int = 0
    explore_steps: int = 0
    mint_history: list = field(default_factory=list)


def sample_time(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Per-dimension sound travel times in (0, 1); exact zeros are redrawn."""
    t = rng.uniform(0.0, 1.0, dim)
    while np.any(t == 0.0):
        zero = t == 0.0
        t[zero] = rng.uniform(0.0, 1.0, int(zero.sum()))
    return t


def fox_sound_distance(best_x, time_st, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Distance travelled by sound: ``(best_x / time_st) * time_st``."""
    best_x = np.asarray(best_x, dtype=float)
    time_st = np.array(time_st, dtype=float)
    zero = time_st == 0.0
    if np.any(zero):
        if rng is None:
            raise ValueError("time_st contains zeros and no rng was given to redraw them")
        while np.any(zero):
            time_st[zero] = rng.uniform(0.0, 1.0, int(zero.sum()))
            zero = time_st == 0.0
    sp_s = best_x / time_st
    return sp_s * time_st


def fox_prey_distance(dist_st) -> np.ndarray:
    return np.asarray(dist_st, dtype=float) * 0.5


def fox_jump(time_st) -> float:
    t = float(np.mean(time_st)) / 2.0
    return 0.5 * GRAVITY * t**2


def fox_a(it: int, epochs: int, variant: str = "printed") -> float:
    """Exploration coefficient.

    ``printed`` is ``2 * (it - 1/epochs)`` (grows with ``it``); ``decreasing``
    is the ramp ``2 * (1 - it/epochs)``.
    """
    if epochs < 1:
        raise ValueError("epochs must be positive")
    if variant == "printed":
        return 2.0 * (it - 1.0 / epochs)
    if variant == "decreasing":
        return 2.0 * (1.0 - it / epochs)
    raise ValueError(f"unknown a variant {variant!r}; expected one of {A_VARIANTS}")


def fox_mint(mint: float, time_st) -> float:
    """Running minimum of the dimension-averaged travel time."""
    tt = float(np.sum(time_st)) / len(time_st)
    return min(mint, tt)


def fox_exploit(dist_fox_prey, jump: float, c1: float, c2: float, p, problem: Optional[BoundedProblem] = None):
    """Jump update. ``p`` may be a scalar or one draw per agent.

    Uses ``c1`` when ``p > 0.18`` and ``c2`` otherwise.
    """
    dist = np.asarray(dist_fox_prey, dtype=float)
    p = np.asarray(p, dtype=float)
    coef = np.where(p > P_THRESHOLD, c1, c2)
    x = dist * jump * coef[..., None] if p.ndim else dist * jump * float(coef)
    return clamp(x, problem) if problem is not None else x


def fox_explore(best_x, rnd, mint: float, a: float, problem: Optional[BoundedProblem] = None):
    """Random walk ``best_x * rnd * mint * a``; ``rnd`` is (dim,) or (n, dim)."""
    x = np.asarray(best_x, dtype=float) * np.asarray(rnd, dtype=float) * mint * a
    return clamp(x, problem) if problem is not None else x


def fox_step(state: FoxState, n_agents: int, problem: BoundedProblem, rng: np.random.Generator, evaluate) -> np.ndarray:
    """Run one epoch, update ``state`` in place and return the new positions."""
    dim = problem.dim
    state.time_st = sample_time(rng, dim)
    state.sp_s = state.best_x / state.time_st
    state.dist_st = fox_sound_distance(state.best_x, state.time_st)
    state.dist_fox_prey = fox_prey_distance(state.dist_st)
    state.jump = fox_jump(state.time_st)
    state.mint = fox_mint(state.mint, state.time_st)
    state.mint_history.append(state.mint)
    state.a = fox_a(state.it, state.epochs, state.a_variant)

    r = rng.uniform(0.0, 1.0, n_agents)
    p = rng.uniform(0.0, 1.0, n_agents)
    rnd = rng.uniform(0.0, 1.0, (n_agents, dim))

    exploit = r >= 0.5
    x_exploit = fox_exploit(state.dist_fox_prey, state.jump, state.c1, state.c2, p)
    x_explore = fox_explore(state.best_x, rnd, state.mint, state.a)
    X = clamp(np.where(exploit[:, None], x_exploit, x_explore), problem)
    state.exploit_steps += int(exploit.sum())
    state.explore_steps += int(n_agents - exploit.sum())

    f = evaluate(X)
    i = int(np.argmin(f))
    if f[i] < state.best_f:
        state.best_f = float(f[i])
        state.best_x = X[i].copy()
    state.it += 1
    return X


def fox_run(
    problem: BoundedProblem,
    config: OptimizerConfig = OptimizerConfig(),
    c1: Optional[float] = None,
    c2: Optional[float] = None,
    a_variant: str = "printed",
) -> RunTrace:
    if a_variant not in A_VARIANTS:
        raise ValueError(f"unknown a variant {a_variant!r}")
    rng = make_rng(config.seed)
    evaluate = CountingObjective(problem)
    best_per_epoch = np.empty(config.epochs)
    with Stopwatch() as sw:
        # c1/c2 are drawn once per run even when overridden, to keep streams aligned
        c1_draw = rng.uniform(*C1_RANGE)
        c2_draw = rng.uniform(*C2_RANGE)
        X = init_population(rng, problem, config.population)
        f = evaluate(X)
        i = int(np.argmin(f))
        state = FoxState(
            best_x=X[i].copy(),
            best_f=float(f[i]),
            c1=c1_draw if c1 is None else float(c1),
            c2=c2_draw if c2 is None else float(c2),
            epochs=config.epochs,
            a_variant=a_variant,
        )
        for k in range(config.epochs):
            X = fox_step(state, config.population, problem, rng, evaluate)
            best_per_epoch[k] = state.best_f
    info = {
        "c1": state.c1,
        "c2": state.c2,
        "exploit_steps": state.exploit_steps,
        "explore_steps": state.explore_steps,
        "final_population": X,
    }
    return RunTrace(best_per_epoch, state.best_x, state.best_f, evaluate.count, sw.seconds, info)


class FOX(BaseOptimizer):
    """FOX optimizer.

    Parameters
    ----------
    epochs : int
        Number of epochs (default 500).
    population : int
        Number of fox agents (default 30).
    seed : int or None
        Seed of the run's random stream.
    c1, c2 : float or None
        Jump coefficients; drawn once per run from [0, 0.18] and
        [0.19, 0.82] when left as None.
    a_variant : {"printed", "decreasing"}
        Schedule of the exploration coefficient ``a``.
    """

    def __init__(self, epochs=500, population=30, seed=None, c1=None, c2=None, a_variant="printed"):
        self.epochs = epochs
        self.population = population
        self.seed = seed
        self.c1 = c1
        self.c2 = c2
        self.a_variant = a_variant

    def _run(self, problem):
        config = OptimizerConfig(self.epochs, self.population, self.seed)
        return fox_run(problem, config, c1=self.c1, c2=self.c2, a_variant=self.a_variant)
