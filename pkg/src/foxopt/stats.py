"""Nonparametric comparison of optimizers: Friedman ranks, Wilcoxon signed-rank,
win/tie/loss tallies. Lower scores are better throughout."""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.stats import norm, rankdata

EXACT_MAX_N = 20
TIE_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ScoreMatrix:
    """Algorithms x tasks table of aggregate scores (e.g. mean best fitness)."""

    algorithms: tuple
    tasks: tuple
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        object.__setattr__(self, "tasks", tuple(self.tasks))
        if values.shape != (len(self.algorithms), len(self.tasks)):
            raise ValueError(f"values shape {values.shape} does not match {len(self.algorithms)} x {len(self.tasks)}")
        if values.size == 0:
            raise ValueError("score matrix is empty")
        if not np.all(np.isfinite(values)):
            raise ValueError("score matrix has missing or non-finite cells")
        object.__setattr__(self, "values", values)

    def row(self, algorithm: str) -> np.ndarray:
        try:
            return self.values[self.algorithms.index(algorithm)]
        except ValueError:
            raise KeyError(f"unknown algorithm {algorithm!r}") from None

    @classmethod
    def from_records(cls, records, algorithm="algorithm", task="problem", value="avg"):
        """Build from dict rows such as the harness's aggregate CSV."""
        algs, tasks, cells = [], [], {}
        for r in records:
            a, t = r[algorithm], r[task]
            if a not in algs:
                algs.append(a)
            if t not in tasks:
                tasks.append(t)
            cells[a, t] = float(r[value])
        missing = [(a, t) for a in algs for t in tasks if (a, t) not in cells]
        if missing:
            raise ValueError(f"missing cells: {missing[:5]}")
        return cls(tuple(algs), tuple(tasks), np.array([[cells[a, t] for t in tasks] for a in algs]))

    @classmethod
    def from_csv(cls, path, **kw):
        with open(path, newline="") as fh:
            return cls.from_records(csv.DictReader(fh), **kw)


@dataclass(frozen=True)
class WilcoxonResult:
    r_plus: float
    r_minus: float
    p_value: float
    n_effective: int
    method: str = "exact"


# -- Friedman -----------------------------------------------------------------


def rank_matrix(m: ScoreMatrix) -> np.ndarray:
    """Per-task ranks (1 = best, ties averaged), shape algorithms x tasks."""
    return rankdata(m.values, method="average", axis=0)


def friedman_ranks(m: ScoreMatrix) -> dict:
    if len(m.algorithms) < 2:
        raise ValueError("need at least two algorithms to rank")
    mean = rank_matrix(m).mean(axis=1)
    return dict(zip(m.algorithms, mean.tolist()))


# -- Wilcoxon signed-rank -----------------------------------------------------


def _signed_ranks(a, b):
    d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
    d = d[d != 0.0]
    return d, rankdata(np.abs(d), method="average")


def _exact_p(ranks: np.ndarray, r_plus: float) -> float:
    """Two-sided p under the sign-flip null, counting subset sums exactly.

    Average ranks are multiples of 1/2, so doubled ranks are integers and the
    null distribution of 2*R+ fits in a count array.
    """
    doubled = np.rint(2.0 * ranks).astype(np.int64)
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=object)
    counts[0] = 1
    for r in doubled:
        counts[r:] = counts[r:] + counts[: total + 1 - r]
    obs = int(round(2.0 * r_plus))
    n_patterns = 2 ** len(ranks)
    lower = sum(counts[: obs + 1])
    upper = sum(counts[obs:])
    return min(1.0, 2.0 * min(lower, upper) / n_patterns)


def _approx_p(ranks: np.ndarray, r_plus: float) -> float:
    """Normal approximation with tie and continuity correction."""
    n = len(ranks)
    mean = n * (n + 1) / 4.0
    _, tie_counts = np.unique(ranks, return_counts=True)
    var = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(tie_counts**3 - tie_counts) / 48.0
    if var <= 0:
        return 1.0
    z = max(abs(r_plus - mean) - 0.5, 0.0) / math.sqrt(var)
    return float(min(1.0, 2.0 * norm.sf(z)))


def wilcoxon_signed_rank(a: Sequence[float], b: Sequence[float], method: str = "auto") -> WilcoxonResult:
    """Paired two-sided signed-rank test of ``a`` against ``b``.

    ``R+`` sums the ranks of positive ``a - b``. Zero differences are dropped.
    ``method`` is ``"exact"``, ``"approx"`` or ``"auto"`` (exact for up to 20
    non-zero differences).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("a and b must be 1-D and of equal length")
    if len(a) < 5:
        raise ValueError("need at least 5 pairs")
    d, ranks = _signed_ranks(a, b)
    n = len(d)
    if n == 0:
        return WilcoxonResult(0.0, 0.0, 1.0, 0, "degenerate")
    r_plus = float(ranks[d > 0].sum())
    r_minus = float(ranks[d < 0].sum())
    if method == "auto":
        method = "exact" if n <= EXACT_MAX_N else "approx"
    if method == "exact":
        p = _exact_p(ranks, r_plus)
    elif method == "approx":
        p = _approx_p(ranks, r_plus)
    else:
        raise ValueError(f"unknown method {method!r}")
    return WilcoxonResult(r_plus, r_minus, p, n, method)


# -- win / tie / loss ---------------------------------------------------------


def win_tie_loss(m: ScoreMatrix, subject: str, tolerance: float = TIE_TOLERANCE) -> tuple:
    """Count (task, opponent) pairs where ``subject`` wins, ties or loses."""
    mine = m.row(subject)
    wins = ties = losses = 0
    for alg in m.algorithms:
        if alg == subject:
            continue
        other = m.row(alg)
        wins += int(np.sum(mine < other - tolerance))
        ties += int(np.sum(np.abs(mine - other) <= tolerance))
        losses += int(np.sum(mine > other + tolerance))
    return wins, ties, losses


# -- report -------------------------------------------------------------------


def compare(m: ScoreMatrix, subject: Optional[str] = None, tolerance: float = TIE_TOLERANCE) -> dict:
    """Friedman ranks, pairwise Wilcoxon tests and tallies in one dict.

    With ``subject`` set, only pairs involving it are tested; otherwise every
    pair is. Pairs with fewer than five tasks are skipped.
    """
    out = {"algorithms": list(m.algorithms), "tasks": list(m.tasks), "friedman": friedman_ranks(m)}
    if subject is not None:
        m.row(subject)
        pairs = [(subject, a) for a in m.algorithms if a != subject]
    else:
        pairs = list(itertools.combinations(m.algorithms, 2))
    tests = []
    if len(m.tasks) >= 5:
        for x, y in pairs:
            # a - b with a = opponent: positive differences mean x scored lower (better)
            res = wilcoxon_signed_rank(m.row(y), m.row(x))
            tests.append(
                {"subject": x, "opponent": y, "r_plus": res.r_plus, "r_minus": res.r_minus,
                 "p_value": res.p_value, "n_effective": res.n_effective, "method": res.method}
            )
    out["wilcoxon"] = tests
    out["win_tie_loss"] = {a: dict(zip(("wins", "ties", "losses"), win_tie_loss(m, a, tolerance))) for a in m.algorithms}
    return out


def compare_json(m: ScoreMatrix, subject: Optional[str] = None, indent: int = 2) -> str:
    return json.dumps(compare(m, subject), indent=indent)
