"""Command-line entry point: ``foxopt {run,scalability,stats,convergence,catalog}``.

Exit codes: 0 success, 1 configuration error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__, benchmarks, engineering
from .harness import (
    SCALABILITY_DIMS,
    SCALABILITY_EPOCHS,
    SCALABILITY_PROBLEM,
    ConfigError,
    ExperimentReport,
    emit_convergence,
    load_config,
    resolve_problem,
    run_experiment,
    run_scalability,
)
from .stats import ScoreMatrix, compare

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _csv_list(value: str) -> tuple:
    return tuple(v.strip() for v in value.split(",") if v.strip())


def _int_list(value: str) -> tuple:
    try:
        return tuple(int(v) for v in _csv_list(value))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="foxopt", description="FOX / IFOX optimizers and experiment harness")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an algorithm x problem x trial grid")
    run.add_argument("--config", help="INI file with an [experiment] section")
    run.add_argument("--problems", type=_csv_list, help="comma-separated problem ids (e.g. CL1,CL9,PVD)")
    run.add_argument("--algorithms", type=_csv_list, help="comma-separated subset of fox,ifox")
    run.add_argument("--epochs", type=int)
    run.add_argument("--population", type=int)
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--dim", type=int, help="override benchmark dimension")
    run.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    run.add_argument("--out", dest="output_dir", help="output directory (default: results)")

    sc = sub.add_parser("scalability", help="runtime and relative error over dims x epoch budgets")
    sc.add_argument("--problem", default=SCALABILITY_PROBLEM)
    sc.add_argument("--algorithm", default="ifox", choices=("fox", "ifox"))
    sc.add_argument("--dims", type=_int_list, default=SCALABILITY_DIMS)
    sc.add_argument("--epochs", type=_int_list, default=SCALABILITY_EPOCHS, help="comma-separated epoch budgets")
    sc.add_argument("--trials", type=int, default=30)
    sc.add_argument("--population", type=int, default=30)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--out", default="scalability.csv", help="output CSV path")

    st = sub.add_parser("stats", help="Friedman / Wilcoxon / win-tie-loss from an aggregates CSV")
    st.add_argument("aggregates", help="aggregates.csv written by 'run'")
    st.add_argument("--subject", help="compare only this algorithm against the others")
    st.add_argument("--value", default="avg", help="aggregate column to compare (default avg)")
    st.add_argument("--out", help="write JSON here instead of stdout")

    cv = sub.add_parser("convergence", help="mean best-so-far curves for one problem")
    cv.add_argument("report", help="report.json written by 'run'")
    cv.add_argument("--problem", required=True)
    cv.add_argument("--out", default="convergence.csv")

    cat = sub.add_parser("catalog", help="list benchmark and engineering problems as JSON")
    cat.add_argument("--suite", choices=("classical", "cec-like", "engineering"))
    return p


def _cmd_run(args) -> int:
    cfg = load_config(
        args.config,
        problems=args.problems,
        algorithms=args.algorithms,
        epochs=args.epochs,
        population=args.population,
        trials=args.trials,
        seed=args.seed,
        dim=args.dim,
        jobs=args.jobs,
        output_dir=args.output_dir,
    )
    report = run_experiment(cfg)
    for c in report.cells:
        print(f"{c.algorithm:5s} {c.problem:6s} avg={c.avg:.6g} std={c.std:.6g} best={c.best:.6g}")
    print(f"results written to {cfg.output_dir}")
    return EXIT_OK


def _cmd_scalability(args) -> int:
    try:
        resolve_problem(args.problem)
    except KeyError as exc:
        raise ConfigError(exc.args[0] if exc.args else str(exc)) from exc
    if any(e < 1 for e in args.epochs) or any(d < 1 for d in args.dims) or args.trials < 1:
        raise ConfigError("dims, epoch budgets and trials must be positive")
    rows = run_scalability(args.problem, args.dims, args.epochs, args.trials, args.algorithm, args.population, args.seed, args.out)
    for r in rows:
        rel = "NA" if r["rel_error"] is None else f"{r['rel_error']:.6g}"
        print(f"dim={r['dim']:4d} epochs={r['epochs']:5d} runtime={r['runtime_s']:.4f}s rel_error={rel}")
    return EXIT_OK


def _cmd_stats(args) -> int:
    try:
        m = ScoreMatrix.from_csv(args.aggregates, value=args.value)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad aggregates file: {exc}") from exc
    text = json.dumps(compare(m, args.subject), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _cmd_convergence(args) -> int:
    try:
        report = ExperimentReport.load(args.report)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad report file: {exc}") from exc
    try:
        emit_convergence(report, args.problem, args.out)
    except KeyError as exc:
        raise ConfigError(exc.args[0] if exc.args else str(exc)) from exc
    print(f"convergence curves written to {args.out}")
    return EXIT_OK


def _cmd_catalog(args) -> int:
    out = {}
    if args.suite in (None, "classical", "cec-like"):
        specs = benchmarks.registry(args.suite)
        out["benchmarks"] = [s.to_dict() for s in specs]
    if args.suite in (None, "engineering"):
        out["engineering"] = [p.to_dict() for p in engineering.problem_catalog()]
    print(json.dumps(out, indent=2))
    return EXIT_OK


COMMANDS = {
    "run": _cmd_run,
    "scalability": _cmd_scalability,
    "stats": _cmd_stats,
    "convergence": _cmd_convergence,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; those are configuration errors here
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - report any failure as a runtime error
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
