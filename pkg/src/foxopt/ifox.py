"""Improved FOX (IFOX).

Compared with FOX, IFOX drops the sound-speed detour (distance to prey is half
the best solution), replaces the c1/c2/a/Mint hyperparameters with a linearly
decaying step scale ``alpha`` and a per-agent perturbation vector ``beta``, and
picks between the exploitation and exploration candidates by fitness instead
of a coin flip. A small chance of an opposition move (reflecting the best
solution through the centre of the box) is mixed in.

All per-agent work inside an epoch depends only on the best solution found in
earlier epochs, so agents are processed as one ``(population, dim)`` block.
"""

from __future__ import annotations

from dataclasses import dataclass
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
    levy_flight,
    make_rng,
)
from .fox import sample_time

HALF_G = 4.905


@dataclass
class IfoxState:
    best_x: np.ndarray
    best_f: float
    epochs: int
    alpha: float = 1.0
    alpha_min: float = 0.0
    beta: Optional[np.ndarray] = None
    jump: float = 0.0
    time_st: Optional[np.ndarray] = None
    it: int = 0
    half_g: float = HALF_G
    opposition_moves: int = 0
    exploit_selected: int = 0
    explore_selected: int = 0


def ifox_distance(best_x) -> np.ndarray:
    return np.asarray(best_x, dtype=float) * 0.5


def ifox_alpha_min(epochs: int) -> float:
    if epochs < 1:
        raise ValueError("epochs must be at least 1")
    return 1.0 / (0.5 * epochs)


def ifox_alpha(it: int, epochs: int) -> float:
    """Step scale decaying linearly from 1 at ``it=0`` to ``2/epochs`` at ``it=epochs``."""
    alpha_min = ifox_alpha_min(epochs)
    if not 0 <= it <= epochs:
        raise ValueError(f"it must lie in [0, {epochs}], got {it}")
    return alpha_min + (1.0 - alpha_min) * (1.0 - it / epochs)


def ifox_beta(rng: np.random.Generator, alpha: float, dim: int, size: Optional[int] = None, return_branch: bool = False):
    """Perturbation vector: Lévy steps scaled by ``alpha`` with probability
    ``alpha``, otherwise uniform on ``[-alpha, alpha)`` per dimension.

    With ``size`` set, returns one independent vector per row of a
    ``(size, dim)`` array.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    if size is None:
        u = rng.uniform()
        levy = u < alpha
        beta = levy_flight(rng, dim) * alpha if levy else rng.uniform(-alpha, alpha, dim)
        return (beta, levy) if return_branch else beta
    u = rng.uniform(0.0, 1.0, size)
    levy = u < alpha
    steps = levy_flight(rng, (size, dim)) * alpha
    flat = rng.uniform(-alpha, alpha, (size, dim))
    beta = np.where(levy[:, None], steps, flat)
    return (beta, levy) if return_branch else beta


def ifox_jump(time_st) -> float:
    t = float(np.mean(time_st)) / 2.0
    return HALF_G * t**2


def ifox_exploit(dist, beta, jump: float, problem: Optional[BoundedProblem] = None) -> np.ndarray:
    dist = np.asarray(dist, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if dist.shape[-1] != beta.shape[-1]:
        raise ValueError(f"length mismatch: dist {dist.shape} vs beta {beta.shape}")
    x = dist * beta * jump
    return clamp(x, problem) if problem is not None else x


def ifox_explore(best_x, beta, alpha: float, problem: Optional[BoundedProblem] = None) -> np.ndarray:
    best_x = np.asarray(best_x, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if best_x.shape[-1] != beta.shape[-1]:
        raise ValueError(f"length mismatch: best_x {best_x.shape} vs beta {beta.shape}")
    x = best_x + beta * alpha
    return clamp(x, problem) if problem is not None else x


def opposition(best_x, problem: BoundedProblem) -> np.ndarray:
    return problem.lower + problem.upper - np.asarray(best_x, dtype=float)


def balance(best_x, xt, xr, beta, problem: BoundedProblem, rng: np.random.Generator, evaluate=None):
    """Fitness-driven choice between the exploitation and exploration candidates.

    Both candidates are evaluated. With probability ``P(u <= min(beta))`` the
    agent instead jumps to the opposition point of ``best_x``, which is
    returned unevaluated (fitness ``nan``). Ties go to the exploitation
    candidate.

    Accepts single vectors or ``(n, dim)`` stacks. Returns
    ``(position, fitness, opposed)``.
    """
    evaluate = evaluate if evaluate is not None else problem.evaluate_many
    single = np.ndim(xt) == 1
    xt, xr, beta = np.atleast_2d(xt), np.atleast_2d(xr), np.atleast_2d(beta)
    f1 = evaluate(xt)
    f2 = evaluate(xr)
    u = rng.uniform(0.0, 1.0, len(xt))
    opposed = u <= beta.min(axis=1)
    take_t = f1 <= f2
    x = np.where(take_t[:, None], xt, xr)
    f = np.where(take_t, f1, f2)
    if np.any(opposed):
        x[opposed] = opposition(best_x, problem)
        f[opposed] = np.nan
    if single:
        return x[0], float(f[0]), bool(opposed[0])
    return x, f, opposed


def ifox_step(state: IfoxState, n_agents: int, problem: BoundedProblem, rng: np.random.Generator, evaluate, strict_reeval: bool = False) -> np.ndarray:
    """One epoch; updates ``state`` in place and returns the agents' positions."""
    state.time_st = sample_time(rng, problem.dim)
    dist = ifox_distance(state.best_x)
    state.jump = ifox_jump(state.time_st)
    state.alpha = ifox_alpha(state.it, state.epochs)

    state.beta = ifox_beta(rng, state.alpha, problem.dim, size=n_agents)
    xt = ifox_exploit(dist, state.beta, state.jump, problem)
    xr = ifox_explore(state.best_x, state.beta, state.alpha, problem)
    X, f, opposed = balance(state.best_x, xt, xr, state.beta, problem, rng, evaluate)

    n_opp = int(opposed.sum())
    state.opposition_moves += n_opp
    picked_t = np.all(X == xt, axis=1) & ~opposed
    state.exploit_selected += int(picked_t.sum())
    state.explore_selected += n_agents - n_opp - int(picked_t.sum())

    if strict_reeval:
        f = evaluate(X)
    elif n_opp:
        f[opposed] = evaluate(X[opposed])

    # sequential "f <= best" sweep: the last agent holding the minimum wins
    m = f.min()
    if m <= state.best_f:
        i = n_agents - 1 - int(np.argmin(f[::-1]))
        state.best_f = float(f[i])
        state.best_x = X[i].copy()
    state.it += 1
    return X


def ifox_run(problem: BoundedProblem, config: OptimizerConfig = OptimizerConfig(), strict_reeval: bool = False) -> RunTrace:
    rng = make_rng(config.seed)
    evaluate = CountingObjective(problem)
    best_per_epoch = np.empty(config.epochs)
    with Stopwatch() as sw:
        X = init_population(rng, problem, config.population)
        f = evaluate(X)
        i = int(np.argmin(f))
        state = IfoxState(best_x=X[i].copy(), best_f=float(f[i]), epochs=config.epochs)
        if config.epochs:
            state.alpha_min = ifox_alpha_min(config.epochs)
        for k in range(config.epochs):
            X = ifox_step(state, config.population, problem, rng, evaluate, strict_reeval)
            best_per_epoch[k] = state.best_f
    info = {
        "opposition_moves": state.opposition_moves,
        "exploit_selected": state.exploit_selected,
        "explore_selected": state.explore_selected,
        "final_population": X,
    }
    return RunTrace(best_per_epoch, state.best_x, state.best_f, evaluate.count, sw.seconds, info)


class IFOX(BaseOptimizer):
    """Improved FOX optimizer.

    Parameters
    ----------
    epochs : int
        Number of epochs (default 500).
    population : int
        Number of fox agents (default 30).
    seed : int or None
        Seed of the run's random stream.
    strict_reeval : bool
        Re-evaluate every selected position after the balance step instead of
        reusing the fitness computed there (three evaluations per agent per
        epoch instead of two). Decisions are identical either way.
    """

    def __init__(self, epochs=500, population=30, seed=None, strict_reeval=False):
        self.epochs = epochs
        self.population = population
        self.seed = seed
        self.strict_reeval = strict_reeval

    def _run(self, problem):
        config = OptimizerConfig(self.epochs, self.population, self.seed)
        return ifox_run(problem, config, strict_reeval=self.strict_reeval)
