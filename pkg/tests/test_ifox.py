import numpy as np
import pytest
from sklearn.base import clone

from equation_cases import IFOX_CASES, check_case, sphere_problem
from foxopt import IFOX, BoundedProblem, OptimizerConfig, fox_run, ifox_run, make_rng
from foxopt.benchmarks import get_problem
from foxopt.core import CountingObjective
from foxopt.ifox import (
    IfoxState,
    balance,
    ifox_alpha,
    ifox_alpha_min,
    ifox_beta,
    ifox_exploit,
    ifox_explore,
    ifox_step,
    opposition,
)


def box5(dim=2):
    return BoundedProblem("box", dim, -5.0, 5.0, lambda x: float(np.sum(x * x)), batch=lambda X: np.sum(X * X, axis=1))


@pytest.mark.parametrize("label,thunk,expected", IFOX_CASES, ids=[c[0] for c in IFOX_CASES])
def test_hand_evaluated(label, thunk, expected):
    assert check_case(thunk, expected), f"{label}: got {thunk()}"


# -- alpha --------------------------------------------------------------------


def test_alpha_schedule_linear_and_decreasing():
    a = np.array([ifox_alpha(i, 500) for i in range(501)])
    assert np.all(np.diff(a) < 0)
    np.testing.assert_allclose(np.diff(a, 2), 0.0, atol=1e-12)
    assert ifox_alpha_min(500) == pytest.approx(0.004, abs=1e-15)


def test_alpha_rejects_bad_input():
    with pytest.raises(ValueError):
        ifox_alpha(501, 500)
    with pytest.raises(ValueError):
        ifox_alpha(-1, 500)
    with pytest.raises(ValueError):
        ifox_alpha_min(0)


# -- beta ---------------------------------------------------------------------


def test_beta_uniform_branch_range():
    eps = 1e-9
    rng = make_rng(0)
    for _ in range(200):
        beta, levy = ifox_beta(rng, eps, 6, return_branch=True)
        if not levy:
            assert np.all(np.abs(beta) < eps)


def test_beta_uniform_branch_range_batched():
    eps = 1e-6
    beta, levy = ifox_beta(make_rng(1), eps, 4, size=5000, return_branch=True)
    assert np.all(np.abs(beta[~levy]) < eps)


def test_beta_deterministic():
    np.testing.assert_array_equal(ifox_beta(make_rng(3), 0.4, 5), ifox_beta(make_rng(3), 0.4, 5))


def test_beta_alpha_one_always_levy():
    _, levy = ifox_beta(make_rng(4), 1.0, 3, size=10**4, return_branch=True)
    assert levy.mean() == 1.0
    rng = make_rng(5)
    assert all(ifox_beta(rng, 1.0, 2, return_branch=True)[1] for _ in range(1000))


def test_beta_levy_frequency_tracks_alpha():
    _, levy = ifox_beta(make_rng(6), 0.3, 2, size=10**5, return_branch=True)
    assert abs(levy.mean() - 0.3) < 0.01


def test_beta_rejects_zero_dim():
    with pytest.raises(ValueError):
        ifox_beta(make_rng(0), 0.5, 0)


# -- candidates ---------------------------------------------------------------


def test_explore_continuity_at_alpha_floor():
    best = np.array([1.0, -2.0, 3.0])
    beta = np.array([0.9, -0.4, 0.7])
    gaps = [np.max(np.abs(ifox_explore(best, beta, a) - best)) for a in (1e-1, 1e-4, 1e-8, 1e-12)]
    assert gaps == sorted(gaps, reverse=True) and gaps[-1] < 1e-11


def test_candidates_clamped():
    p = box5()
    np.testing.assert_array_equal(ifox_exploit([10, -10], [1, 1], 1.0, p), [5, -5])
    np.testing.assert_array_equal(ifox_explore([4, -4], [10, -10], 1.0, p), [5, -5])


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        ifox_exploit([1, 2], [1, 2, 3], 1.0)
    with pytest.raises(ValueError):
        ifox_explore([1, 2], [1], 1.0)


# -- balance ------------------------------------------------------------------


def test_balance_negative_beta_never_opposes():
    p = box5()
    for s in range(300):
        _, _, opposed = balance([1, 1], [0.1, 0.2], [3, 3], [-1e-12, 0.5], p, make_rng(s))
        assert not opposed


def test_balance_forced_opposition():
    x, f, opposed = balance([1, -2], [0, 0], [3, 3], [1.0, 1.0], box5(), make_rng(0))
    assert opposed
    np.testing.assert_array_equal(x, [-1, 2])
    assert np.isnan(f)


def test_balance_prefers_lower_fitness():
    x, f, _ = balance([0, 0], [3, 3], [0, 0], [-0.5, -0.5], box5(), make_rng(0))
    np.testing.assert_array_equal(x, [0, 0])
    assert f == 0.0


def test_balance_tie_goes_to_exploit():
    p = BoundedProblem("flat", 2, -5, 5, lambda x: 1.0)
    x, _, _ = balance([0, 0], [1, 1], [2, 2], [-1, -1], p, make_rng(0))
    np.testing.assert_array_equal(x, [1, 1])


def test_balance_evaluates_both_candidates():
    p = box5()
    ev = CountingObjective(p)
    balance([0, 0], np.zeros((4, 2)), np.ones((4, 2)), -np.ones((4, 2)), p, make_rng(0), ev)
    assert ev.count == 8


# -- step / run ---------------------------------------------------------------


def test_greedy_update_last_agent_wins_ties():
    p = BoundedProblem("flat", 3, -5, 5, lambda x: 2.0, batch=lambda X: np.full(len(X), 2.0))
    state = IfoxState(best_x=np.zeros(3), best_f=2.0, epochs=10)
    X = ifox_step(state, 7, p, make_rng(0), CountingObjective(p))
    np.testing.assert_array_equal(state.best_x, X[-1])


def test_zero_epochs():
    p = sphere_problem(3)
    t = ifox_run(p, OptimizerConfig(0, 8, 2))
    X0 = t.info["final_population"]
    assert t.epochs == 0
    assert t.final_best_f == pytest.approx(np.min(p.evaluate_many(X0)))
    assert t.evaluations == 8


def test_deterministic():
    p = get_problem("CL11", 10)
    a = ifox_run(p, OptimizerConfig(60, 10, 8))
    b = ifox_run(p, OptimizerConfig(60, 10, 8))
    np.testing.assert_array_equal(a.best_per_epoch, b.best_per_epoch)
    np.testing.assert_array_equal(a.final_best_x, b.final_best_x)


@pytest.mark.parametrize("tid", ["CL1", "CL11", "CL14", "CX1"])
def test_evaluation_identity(tid):
    cfg = OptimizerConfig(40, 12, 3)
    t = ifox_run(get_problem(tid, 6), cfg)
    assert t.evaluations == cfg.population + 2 * cfg.population * cfg.epochs + t.info["opposition_moves"]
    moves = t.info["opposition_moves"] + t.info["exploit_selected"] + t.info["explore_selected"]
    assert moves == cfg.population * cfg.epochs


def test_strict_reeval_same_decisions():
    p = get_problem("CL14", 5)
    cfg = OptimizerConfig(40, 10, 4)
    a = ifox_run(p, cfg)
    b = ifox_run(p, cfg, strict_reeval=True)
    np.testing.assert_array_equal(a.best_per_epoch, b.best_per_epoch)
    assert b.evaluations == cfg.population * (1 + 3 * cfg.epochs)


def test_sphere_dim10_below_fox():
    p = sphere_problem(10)
    cfg = [OptimizerConfig(500, 30, s) for s in range(30)]
    ifox_mean = np.mean([ifox_run(p, c).final_best_f for c in cfg])
    fox_mean = np.mean([fox_run(p, c).final_best_f for c in cfg])
    assert ifox_mean < fox_mean, f"IFOX mean {ifox_mean!r} vs FOX mean {fox_mean!r}"


def test_estimator_api():
    p = get_problem("CL1", 3)
    est = IFOX(epochs=15, population=4, seed=0, strict_reeval=True)
    assert est.get_params()["strict_reeval"] is True
    est.fit(p)
    assert est.n_evaluations_ == 4 * (1 + 3 * 15)
    assert clone(est).fit(p).best_f_ == est.best_f_
    assert est.minimize(p).final_best_f == est.best_f_


def test_opposition_closure():
    p = BoundedProblem("b", 3, [-1, 0, 10], [4, 2, 30], lambda x: 0.0)
    X = np.random.default_rng(0).uniform(p.lower, p.upper, (500, 3))
    O = opposition(X, p)
    assert np.all(O >= p.lower) and np.all(O <= p.upper)
    np.testing.assert_allclose(opposition(O, p), X, atol=1e-12)


def test_balance_returns_min_fitness_when_not_opposed():
    p = box5(4)
    rng = np.random.default_rng(1)
    xt, xr = rng.uniform(-5, 5, (300, 4)), rng.uniform(-5, 5, (300, 4))
    beta = rng.uniform(-1, 1, (300, 4))
    x, f, opposed = balance(np.zeros(4), xt, xr, beta, p, make_rng(2))
    keep = ~opposed
    np.testing.assert_array_equal(f[keep], np.minimum(p.evaluate_many(xt), p.evaluate_many(xr))[keep])
    np.testing.assert_array_equal(p.evaluate_many(x[keep]), f[keep])
