import numpy as np
import pytest
from sklearn.base import clone

from equation_cases import FOX_CASES, check_case, sphere_problem
from foxopt import FOX, OptimizerConfig, fox_run, make_rng
from foxopt.benchmarks import get_problem
from foxopt.core import CountingObjective, init_population
from foxopt.fox import C1_RANGE, C2_RANGE, FoxState, fox_a, fox_exploit, fox_mint, fox_sound_distance, fox_step, sample_time


@pytest.mark.parametrize("label,thunk,expected", FOX_CASES, ids=[c[0] for c in FOX_CASES])
def test_hand_evaluated(label, thunk, expected):
    assert check_case(thunk, expected), f"{label}: got {thunk()}"


def test_sound_distance_zero_time_needs_rng():
    with pytest.raises(ValueError):
        fox_sound_distance([1, 2], [0.0, 0.5])
    out = fox_sound_distance([1, 2], [0.0, 0.5], rng=make_rng(0))
    np.testing.assert_allclose(out, [1, 2])


def test_sample_time_open_interval():
    t = sample_time(make_rng(0), 10**5)
    assert t.min() > 0 and t.max() < 1


def test_a_variants():
    assert fox_a(0, 500) == pytest.approx(-0.004)
    assert fox_a(3, 500) == pytest.approx(2 * (3 - 1 / 500))
    assert fox_a(0, 500, "decreasing") == 2.0
    assert fox_a(500, 500, "decreasing") == 0.0
    with pytest.raises(ValueError):
        fox_a(1, 10, "bogus")


def test_mint_running_minimum():
    m = fox_mint(np.inf, [0.4, 0.6])
    assert m == 0.5
    assert fox_mint(m, [0.9, 0.9]) == 0.5
    assert fox_mint(m, [0.1, 0.3]) == pytest.approx(0.2)


def test_exploit_vector_p_picks_per_agent():
    out = fox_exploit([1.0, 1.0], 1.0, 0.1, 0.5, [0.9, 0.05])
    np.testing.assert_allclose(out, [[0.1, 0.1], [0.5, 0.5]])


def test_coefficients_drawn_in_range():
    p = sphere_problem(3)
    for s in range(20):
        info = fox_run(p, OptimizerConfig(1, 2, s)).info
        assert C1_RANGE[0] <= info["c1"] <= C1_RANGE[1]
        assert C2_RANGE[0] <= info["c2"] <= C2_RANGE[1]


def test_exploit_fraction_half():
    # r >= 0.5 selects the jump update; 1e5 agent-steps
    info = fox_run(get_problem("CL1", 2), OptimizerConfig(1000, 100, 11)).info
    frac = info["exploit_steps"] / (info["exploit_steps"] + info["explore_steps"])
    assert 0.49 <= frac <= 0.51


def test_single_agent_elitism():
    p = sphere_problem(5)
    t = fox_run(p, OptimizerConfig(500, 1, 3))
    init = fox_run(p, OptimizerConfig(0, 1, 3))
    assert t.final_best_f <= init.final_best_f
    assert np.all(np.diff(t.best_per_epoch) <= 0)


def test_zero_epochs_population_unchanged():
    p = sphere_problem(4)
    t = fox_run(p, OptimizerConfig(0, 6, 9))
    rng = make_rng(9)
    rng.uniform(*C1_RANGE)
    rng.uniform(*C2_RANGE)
    np.testing.assert_array_equal(t.info["final_population"], init_population(rng, p, 6))
    assert t.epochs == 0 and t.evaluations == 6


def test_sphere_dim2_regression():
    p = sphere_problem(2)
    finals = [fox_run(p, OptimizerConfig(500, 30, s)).final_best_f for s in range(30)]
    assert np.mean(finals) < 1e-2


def test_evaluation_count():
    t = fox_run(sphere_problem(3), OptimizerConfig(17, 9, 0))
    assert t.evaluations == 9 + 9 * 17


def test_deterministic():
    p = get_problem("CL11", 10)
    a = fox_run(p, OptimizerConfig(50, 10, 5))
    b = fox_run(p, OptimizerConfig(50, 10, 5))
    np.testing.assert_array_equal(a.best_per_epoch, b.best_per_epoch)
    np.testing.assert_array_equal(a.final_best_x, b.final_best_x)


def test_coefficient_override_keeps_stream():
    p = get_problem("CL13", 4)
    a = fox_run(p, OptimizerConfig(5, 4, 1))
    b = fox_run(p, OptimizerConfig(5, 4, 1), c1=a.info["c1"], c2=a.info["c2"])
    np.testing.assert_array_equal(a.best_per_epoch, b.best_per_epoch)


def test_decreasing_variant_runs():
    t = fox_run(get_problem("CL9", 5), OptimizerConfig(30, 5, 0), a_variant="decreasing")
    assert np.isfinite(t.final_best_f)
    with pytest.raises(ValueError):
        fox_run(get_problem("CL9", 5), OptimizerConfig(3, 5, 0), a_variant="nope")


def test_estimator_api():
    p = get_problem("CL1", 3)
    est = FOX(epochs=20, population=5, seed=1)
    assert est.get_params() == {"epochs": 20, "population": 5, "seed": 1, "c1": None, "c2": None, "a_variant": "printed"}
    est.fit(p)
    assert est.best_f_ == est.trace_.final_best_f
    assert est.n_evaluations_ == 5 + 5 * 20
    twin = clone(est).fit(p)
    assert twin.best_f_ == est.best_f_
    with pytest.raises(TypeError):
        est.fit(lambda x: 0.0)


def test_mint_never_increases():
    p = get_problem("CL12", 6)
    rng = make_rng(2)
    st = FoxState(np.ones(6), p(np.ones(6)), 0.1, 0.5, 200)
    for _ in range(200):
        fox_step(st, 5, p, rng, CountingObjective(p))
    assert np.all(np.diff(st.mint_history) <= 0)
    assert 0 < st.mint_history[-1] < 1
