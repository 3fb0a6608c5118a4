"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the report lines,
or ``python tests/test_acceptance.py`` for a plain summary.
"""

import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import ortho_group

sys.path.insert(0, str(Path(__file__).parent))

from equation_cases import FOX_CASES, IFOX_CASES, check_case  # noqa: E402
from test_stats import rerank_oracle, wilcoxon_enumeration  # noqa: E402

from foxopt import OptimizerConfig, fox_run, ifox_run, make_rng  # noqa: E402
from foxopt.benchmarks import TransformSpec, apply_transform, get_problem, registry  # noqa: E402
from foxopt import benchmarks as bm  # noqa: E402
from foxopt.core import CountingObjective, init_population  # noqa: E402
from foxopt.engineering import gear_ratio_error, get_engineering, gtp_brute_force  # noqa: E402
from foxopt.fox import C1_RANGE, C2_RANGE, FoxState, fox_step  # noqa: E402
from foxopt.harness import ExperimentConfig, run_experiment, run_scalability  # noqa: E402
from foxopt.ifox import IfoxState, ifox_alpha, ifox_alpha_min, ifox_step  # noqa: E402
from foxopt.stats import ScoreMatrix, compare, friedman_ranks, rank_matrix, wilcoxon_signed_rank  # noqa: E402


def report(n, title, ok, detail, t0):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title} ({time.perf_counter() - t0:.1f}s) {detail}"
    print(line)
    return line


# 1 -----------------------------------------------------------------------------


def criterion_1():
    a = np.array([ifox_alpha(i, 500) for i in range(501)])
    slope = (a[-1] - a[0]) / 500
    linear = np.max(np.abs(a - (a[0] + slope * np.arange(501))))
    ok = a[0] == 1.0 and abs(a[-1] - 0.004) < 1e-12 and np.all(np.diff(a) < 0) and linear < 1e-12
    ok = ok and abs(ifox_alpha_min(500) - 0.004) < 1e-15
    return ok, f"alpha(0)={float(a[0])!r} alpha(500)={float(a[-1])!r} max linear residual={linear:.1e}"


# 2 -----------------------------------------------------------------------------


def criterion_2():
    failed = [label for label, thunk, want in FOX_CASES + IFOX_CASES if not check_case(thunk, want)]
    n = len(FOX_CASES) + len(IFOX_CASES)
    return not failed, f"{n - len(failed)}/{n} hand-evaluated cases" + (f"; failed: {failed}" if failed else "")


# 3 -----------------------------------------------------------------------------


def criterion_3():
    checks = []
    for tid in ("CL2", "CL11", "CL7", "CX2"):
        p = get_problem(tid, 10)
        for run in (fox_run, ifox_run):
            a, b = run(p, OptimizerConfig(80, 12, 123)), run(p, OptimizerConfig(80, 12, 123))
            checks.append(np.array_equal(a.best_per_epoch, b.best_per_epoch) and np.array_equal(a.final_best_x, b.final_best_x))
    cfg = dict(problems=("CL1", "CL11", "CL13", "CL7"), epochs=40, population=10, trials=4, seed=5)
    with tempfile.TemporaryDirectory() as d:
        run_experiment(ExperimentConfig(output_dir=f"{d}/serial", jobs=1, **cfg))
        run_experiment(ExperimentConfig(output_dir=f"{d}/parallel", jobs=4, **cfg))
        names = ["aggregates.csv"] + [f"traces/{a}__{p}.csv" for a in ("fox", "ifox") for p in cfg["problems"]]
        same = [Path(d, "serial", n).read_bytes() == Path(d, "parallel", n).read_bytes() for n in names]
    ok = all(checks) and all(same)
    return ok, f"repeat runs identical {sum(checks)}/{len(checks)}; serial vs 4 workers identical files {sum(same)}/{len(same)}"


# 4 -----------------------------------------------------------------------------


def _property_run(step_fn, state, problem, rng, epochs, pop):
    seen_min = state.best_f
    evaluate = CountingObjective(problem)
    prev = state.best_f
    for _ in range(epochs):
        X = step_fn(state, pop, problem, rng, evaluate)
        if np.any(X < problem.lower) or np.any(X > problem.upper):
            return False, "position left the box"
        seen_min = min(seen_min, float(np.min(problem.evaluate_many(X))))
        if state.best_f > prev:
            return False, "best-so-far increased"
        if state.best_f != seen_min:
            return False, "best-so-far differs from best evaluated"
        prev = state.best_f
    return True, ""


def criterion_4():
    funcs = ("CL2", "CL11", "CL12", "CL14", "CX3")
    rng0 = np.random.default_rng(2024)
    steps = {"fox": 0, "ifox": 0}
    problems = []
    for tid in funcs:
        dim = int(rng0.integers(3, 12))
        p = get_problem(tid, dim)
        for trial in range(2):
            seed = int(rng0.integers(0, 2**31))
            pop = int(rng0.integers(2, 15))
            epochs = 600
            # FOX
            rng = make_rng(seed)
            X = init_population(rng, p, pop)
            f = p.evaluate_many(X)
            st = FoxState(X[np.argmin(f)].copy(), float(f.min()), rng.uniform(*C1_RANGE), rng.uniform(*C2_RANGE), epochs)
            ok, why = _property_run(fox_step, st, p, rng, epochs, pop)
            if not ok:
                return False, f"FOX on {tid}: {why}"
            steps["fox"] += epochs
            # IFOX
            rng = make_rng(seed)
            X = init_population(rng, p, pop)
            f = p.evaluate_many(X)
            st = IfoxState(X[np.argmin(f)].copy(), float(f.min()), epochs)
            ok, why = _property_run(lambda s, n, pr, r, ev: ifox_step(s, n, pr, r, ev), st, p, rng, epochs, pop)
            if not ok:
                return False, f"IFOX on {tid}: {why}"
            steps["ifox"] += epochs
        problems.append(f"{tid}/d{dim}")
    return True, f"epochs checked fox={steps['fox']} ifox={steps['ifox']} on {', '.join(problems)}"


# 5 -----------------------------------------------------------------------------


def criterion_5():
    tids = [s.tid for s in registry("classical")]
    rep = run_experiment(ExperimentConfig(problems=tids, epochs=500, population=30, trials=30, seed=0, output_dir=None))
    m = rep.score_matrix()
    ranks = friedman_ranks(m)
    w = wilcoxon_signed_rank(m.row("fox"), m.row("ifox"))  # R+ sums tasks where IFOX is lower
    ok = ranks["ifox"] < ranks["fox"] and w.p_value < 0.05 and w.r_plus > w.r_minus
    wtl = compare(m, subject="ifox")["win_tie_loss"]["ifox"]
    return ok, (
        f"Friedman ifox={ranks['ifox']:.3f} fox={ranks['fox']:.3f}; Wilcoxon R+={w.r_plus} R-={w.r_minus} "
        f"n={w.n_effective} p={w.p_value:.4g} ({w.method}); ifox w/t/l={wtl['wins']}/{wtl['ties']}/{wtl['losses']}"
    )


# 6 -----------------------------------------------------------------------------


def criterion_6():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(5, 13))
        a = np.round(rng.normal(size=n), 1)
        b = np.round(rng.normal(size=n), 1)
        r = wilcoxon_signed_rank(a, b, method="exact")
        p, rp, rm = wilcoxon_enumeration(a, b)
        worst = max(worst, abs(r.p_value - p))
        ne = r.n_effective
        if (r.r_plus, r.r_minus) != (rp, rm) or r.r_plus + r.r_minus != ne * (ne + 1) / 2:
            return False, "rank sums disagree with enumeration"
    return worst < 1e-12, f"50 instances, max |p - p_enum| = {worst:.1e}"


# 7 -----------------------------------------------------------------------------


def criterion_7():
    examples = [
        friedman_ranks(ScoreMatrix(["a", "b", "c"], ["t1", "t2"], [[1, 2], [2, 1], [3, 3]])) == {"a": 1.5, "b": 1.5, "c": 3.0},
        friedman_ranks(ScoreMatrix(["a", "b", "c"], ["t1", "t2", "t3"], [[0, 0, 0], [1, 2, 1], [2, 1, 2]]))["a"] == 1.0,
        friedman_ranks(ScoreMatrix(["a", "b"], ["t1", "t2", "t3"], [[1, 2, 3], [1, 2, 3]])) == {"a": 1.5, "b": 1.5},
    ]
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        k, n = int(rng.integers(2, 9)), int(rng.integers(1, 20))
        vals = np.round(rng.normal(size=(k, n)), 1)
        m = ScoreMatrix([f"A{i}" for i in range(k)], [f"T{j}" for j in range(n)], vals)
        oracle = rerank_oracle(vals)
        worst = max(worst, np.max(np.abs(rank_matrix(m) - oracle)), np.max(np.abs(np.array(list(friedman_ranks(m).values())) - oracle.mean(1))))
        if not np.allclose(rank_matrix(m).sum(axis=0), k * (k + 1) / 2, rtol=0, atol=1e-12):
            return False, "per-task rank sum differs from k(k+1)/2"
    ok = all(examples) and worst < 1e-12
    return ok, f"examples {sum(examples)}/3; 100 random matrices, max deviation {worst:.1e}"


# 8 -----------------------------------------------------------------------------


def criterion_8():
    epochs = (50, 100, 250, 500, 1000)
    rows = run_scalability("CX1", dims=(10, 100), epoch_grid=epochs, trials=30)
    by = {(r["dim"], r["epochs"]): r for r in rows}
    ratio = by[10, 1000]["runtime_s"] / by[10, 50]["runtime_s"]
    grows = [by[100, e]["rel_error"] > by[10, e]["rel_error"] for e in epochs]
    ok = 15 <= ratio <= 25 and all(grows)
    errs = ", ".join(f"{e}:{by[10, e]['rel_error']:.3g}/{by[100, e]['rel_error']:.3g}" for e in epochs)
    return ok, f"runtime ratio 1000/50 epochs at dim 10 = {ratio:.2f}; rel error dim10/dim100 by epochs {errs}"


# 9 -----------------------------------------------------------------------------


def criterion_9():
    best, quads = gtp_brute_force(12, 60)
    ref_ok = (49, 16, 19, 43) in quads and abs(gear_ratio_error(np.array([49.0, 16, 19, 43])) - best) <= 1e-20
    p = get_engineering("GTP").as_problem()
    finals = [ifox_run(p, OptimizerConfig(500, 30, s)).final_best_f for s in range(30)]
    hits = sum(f <= 10 * best for f in finals)
    ok = ref_ok and hits >= 15
    return ok, (
        f"brute force min={best:.4e} at {len(quads)} quadruples incl. (49,16,19,43)={ref_ok}; "
        f"IFOX within 10x in {hits}/30 trials (need >= 15); median error {np.median(finals):.3e}"
    )


# 10 ----------------------------------------------------------------------------


def criterion_10():
    worst, checked = 0.0, 0
    for spec in registry():
        x = spec.optimum_x
        if x is None:
            continue
        worst = max(worst, abs(float(spec.function()(x)) - spec.optimum_f))
        checked += 1
    g = np.linspace(-3, 3, 61)
    X = np.stack(np.meshgrid(g, g), -1).reshape(-1, 2)
    s = np.array([0.83, -1.37])
    shift_dev = max(
        float(np.max(np.abs(apply_transform(TransformSpec(shift=s), f, X + s) - f(X))))
        for f in (bm.sphere, bm.rastrigin, bm.ackley, bm.griewank, bm.rosenbrock, bm.levy, bm.schwefel_2_22)
    )
    rot_dev = 0.0
    for seed in range(10):
        R = ortho_group.rvs(2, random_state=seed)
        rot_dev = max(rot_dev, float(np.max(np.abs(apply_transform(TransformSpec(rotation=R), bm.sphere, X) - bm.sphere(X)))))
    ok = worst < 1e-12 and shift_dev < 1e-9 and rot_dev < 1e-12
    return ok, f"{checked} minimizers max |f - f*| = {worst:.1e}; shift dev {shift_dev:.1e}; rotation dev {rot_dev:.1e}"


CRITERIA = [
    (1, "alpha schedule exactness", criterion_1),
    (2, "update-rule unit cases", criterion_2),
    (3, "determinism incl. parallel trials", criterion_3),
    (4, "elitism and bounds", criterion_4),
    (5, "IFOX beats FOX on classical suite", criterion_5),
    (6, "Wilcoxon vs enumeration oracle", criterion_6),
    (7, "Friedman vs re-ranking oracle", criterion_7),
    (8, "scalability shape", criterion_8),
    (9, "gear train brute force and IFOX hit rate", criterion_9),
    (10, "benchmark integrity", criterion_10),
]


@pytest.mark.parametrize("n,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, title, fn):
    t0 = time.perf_counter()
    ok, detail = fn()
    line = report(n, title, ok, detail, t0)
    assert ok, line


if __name__ == "__main__":
    results = []
    for n, title, fn in CRITERIA:
        t0 = time.perf_counter()
        ok, detail = fn()
        report(n, title, ok, detail, t0)
        results.append(ok)
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
