"""Constrained engineering design problems with a static quadratic penalty.

Formulations follow the usual literature versions (as collected in the
``enoppy`` suite and the papers it cites). Every formula is vectorized over
the last axis of ``x`` so whole populations are evaluated at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import BoundedProblem

DEFAULT_PENALTY = 1e6


@dataclass(frozen=True)
class ConstrainedProblem:
    """Box-bounded design problem with inequality constraints ``g_i(x) <= 0``.

    ``integrality`` marks variables rounded to the nearest integer before
    evaluation; ``levels`` maps a variable index to the discrete values it may
    take (snapped to the nearest one). The search itself stays continuous.
    """

    name: str
    variables: tuple
    lower: np.ndarray
    upper: np.ndarray
    objective: Callable
    constraints: tuple
    integrality: np.ndarray = None
    levels: dict = field(default_factory=dict)
    penalty_coefficient: float = DEFAULT_PENALTY
    reference_x: Optional[np.ndarray] = None
    description: str = ""

    def __post_init__(self):
        d = len(self.variables)
        object.__setattr__(self, "lower", np.asarray(self.lower, dtype=float).reshape(d))
        object.__setattr__(self, "upper", np.asarray(self.upper, dtype=float).reshape(d))
        mask = np.zeros(d, bool) if self.integrality is None else np.asarray(self.integrality, bool)
        object.__setattr__(self, "integrality", mask)
        if self.penalty_coefficient <= 0:
            raise ValueError("penalty_coefficient must be positive")
        if self.reference_x is not None:
            object.__setattr__(self, "reference_x", np.asarray(self.reference_x, dtype=float))

    @property
    def dim(self) -> int:
        return len(self.variables)

    @property
    def base(self) -> BoundedProblem:
        """The raw (unpenalized) objective over the box."""
        return BoundedProblem(self.name, self.dim, self.lower, self.upper, lambda x: float(self.raw(x)), batch=self.raw)

    def snap(self, x) -> np.ndarray:
        x = np.array(x, dtype=float)
        if self.integrality.any():
            x[..., self.integrality] = np.round(x[..., self.integrality])
        for i, values in self.levels.items():
            values = np.asarray(values, dtype=float)
            k = np.argmin(np.abs(x[..., i, None] - values), axis=-1)
            x[..., i] = values[k]
        return x

    def raw(self, x):
        return self.objective(self.snap(x))

    def g(self, x) -> np.ndarray:
        """Constraint values, shape ``(..., n_constraints)``."""
        x = self.snap(x)
        if not self.constraints:
            return np.zeros(x.shape[:-1] + (0,))
        return np.stack([np.broadcast_to(c(x), x.shape[:-1]) for c in self.constraints], axis=-1)

    def violations(self, x) -> np.ndarray:
        return np.maximum(0.0, self.g(x))

    def penalized(self, x):
        v = self.violations(x)
        return self.raw(x) + self.penalty_coefficient * np.sum(v**2, axis=-1)

    def is_feasible(self, x) -> bool:
        return bool(np.all(self.violations(x) == 0.0))

    def as_problem(self) -> BoundedProblem:
        """Penalized objective as a plain BoundedProblem for the optimizers."""
        return BoundedProblem(
            name=self.name,
            dim=self.dim,
            lower=self.lower,
            upper=self.upper,
            objective=lambda x: float(self.penalized(x)),
            batch=self.penalized,
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "variables": list(self.variables),
            "bounds": [self.lower.tolist(), self.upper.tolist()],
            "constraints": len(self.constraints),
            "integer": [v for v, m in zip(self.variables, self.integrality) if m],
            "description": self.description,
        }


def penalized(problem: ConstrainedProblem, x):
    return problem.penalized(x)


def _c(x, i):
    return x[..., i]


# -- BCP: bulk carrier design (Sen & Yang; Parsons & Scott) -------------------


def _bulk_carrier_terms(x):
    L, B, D, T, Vk, CB = (x[..., i] for i in range(6))
    a = 4977.06 * CB**2 - 8105.61 * CB + 4456.51
    b = -10847.2 * CB**2 + 12817.0 * CB - 6960.32
    Fn = 0.5144 * Vk / np.sqrt(9.8065 * L)
    displacement = 1.025 * L * B * T * CB
    P = displacement ** (2.0 / 3.0) * Vk**3 / (a + b * Fn)
    Ws = 0.034 * L**1.7 * B**0.7 * D**0.4 * CB**0.5
    Wo = L**0.8 * B**0.6 * D**0.3 * CB**0.1
    Wm = 0.17 * np.abs(P) ** 0.9
    DWT = displacement - (Ws + Wo + Wm)
    dwt = np.maximum(DWT, 1e-9)
    ship_cost = 1.3 * (2000.0 * Ws**0.85 + 3500.0 * Wo + 2400.0 * np.abs(P) ** 0.8)
    sea_days = 5000.0 / (24.0 * Vk)
    daily = 0.19 * P * 24.0 / 1000.0 + 0.2
    fuel_cost = 1.05 * daily * sea_days * 100.0
    port_cost = 6.3 * dwt**0.8
    cargo_dwt = DWT - daily * (sea_days + 5.0) - 2.0 * dwt**0.5
    port_days = 2.0 * (cargo_dwt / 8000.0 + 0.5)
    rtpa = 350.0 / (sea_days + port_days)
    annual_cost = 0.2 * ship_cost + 40000.0 * dwt**0.3 + (fuel_cost + port_cost) * rtpa
    annual_cargo = cargo_dwt * rtpa
    GMT = 0.53 * T + (0.085 * CB - 0.002) * B**2 / (T * CB) - (1.0 + 0.52 * D)
    return dict(L=L, B=B, D=D, T=T, Fn=Fn, DWT=DWT, cost=annual_cost / annual_cargo, GMT=GMT)


def _bcp_f(x):
    return _bulk_carrier_terms(x)["cost"]


def _bcp_g(k):
    def g(x):
        t = _bulk_carrier_terms(x)
        dwt = np.maximum(t["DWT"], 1e-9)
        return [
            6.0 - t["L"] / t["B"],
            t["L"] / t["D"] - 15.0,
            t["L"] / t["T"] - 19.0,
            t["T"] - 0.45 * dwt**0.31,
            t["T"] - (0.7 * t["D"] + 0.7),
            3000.0 - t["DWT"],
            t["DWT"] - 500000.0,
            t["Fn"] - 0.32,
            0.07 * t["B"] - t["GMT"],
        ][k]

    return g


# -- CBP: cantilever beam -----------------------------------------------------


def _cbp_f(x):
    return 0.0624 * np.sum(x, axis=-1)


def _cbp_g(x):
    c = np.array([61.0, 37.0, 19.0, 7.0, 1.0])
    return np.sum(c / x**3, axis=-1) - 1.0


# -- CSD: tension/compression spring ------------------------------------------


def _csd_f(x):
    d, D, N = _c(x, 0), _c(x, 1), _c(x, 2)
    return (N + 2.0) * D * d**2


_CSD_G = (
    lambda x: 1.0 - _c(x, 1) ** 3 * _c(x, 2) / (71785.0 * _c(x, 0) ** 4),
    lambda x: (4.0 * _c(x, 1) ** 2 - _c(x, 0) * _c(x, 1)) / (12566.0 * (_c(x, 1) * _c(x, 0) ** 3 - _c(x, 0) ** 4))
    + 1.0 / (5108.0 * _c(x, 0) ** 2)
    - 1.0,
    lambda x: 1.0 - 140.45 * _c(x, 0) / (_c(x, 1) ** 2 * _c(x, 2)),
    lambda x: (_c(x, 0) + _c(x, 1)) / 1.5 - 1.0,
)


# -- CSP: car side impact (11 variables, two discrete material choices) -------


def _csp_f(x):
    x1, x2, x3, x4, x5, x7 = (x[..., i] for i in (0, 1, 2, 3, 4, 6))
    return 1.98 + 4.90 * x1 + 6.67 * x2 + 6.98 * x3 + 4.01 * x4 + 1.78 * x5 + 2.73 * x7


def _csp_constraints():
    def v(x):
        return [None] + [x[..., i] for i in range(11)]

    def g1(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return 1.16 - 0.3717 * x2 * x4 - 0.00931 * x2 * x10 - 0.484 * x3 * x9 + 0.01343 * x6 * x10 - 1.0

    def g2(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return (
            0.261 - 0.0159 * x1 * x2 - 0.188 * x1 * x8 - 0.019 * x2 * x7 + 0.0144 * x3 * x5
            + 0.0008757 * x5 * x10 + 0.08045 * x6 * x9 + 0.00139 * x8 * x11 + 0.00001575 * x10 * x11 - 0.32
        )

    def g3(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return (
            0.214 + 0.00817 * x5 - 0.131 * x1 * x8 - 0.0704 * x1 * x9 + 0.03099 * x2 * x6
            - 0.018 * x2 * x7 + 0.0208 * x3 * x8 + 0.121 * x3 * x9 - 0.00364 * x5 * x6
            + 0.0007715 * x5 * x10 - 0.0005354 * x6 * x10 + 0.00121 * x8 * x11
            + 0.00184 * x9 * x10 - 0.02 * x2**2 - 0.32
        )

    def g4(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return 0.74 - 0.61 * x2 - 0.163 * x3 * x8 + 0.001232 * x3 * x10 - 0.166 * x7 * x9 + 0.227 * x2**2 - 0.32

    def g5(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return 28.98 + 3.818 * x3 - 4.2 * x1 * x2 + 0.0207 * x5 * x10 + 6.63 * x6 * x9 - 7.7 * x7 * x8 + 0.32 * x9 * x10 - 32.0

    def g6(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return (
            33.86 + 2.95 * x3 + 0.1792 * x10 - 5.057 * x1 * x2 - 11.0 * x2 * x8
            - 0.0215 * x5 * x10 - 9.98 * x7 * x8 + 22.0 * x8 * x9 - 32.0
        )

    def g7(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return 46.36 - 9.9 * x2 - 12.9 * x1 * x8 + 0.1107 * x3 * x10 - 32.0

    def g8(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return 4.72 - 0.5 * x4 - 0.19 * x2 * x3 - 0.0122 * x4 * x10 + 0.009325 * x6 * x10 + 0.000191 * x11**2 - 4.0

    def g9(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return 10.58 - 0.674 * x1 * x2 - 1.95 * x2 * x8 + 0.02054 * x3 * x10 - 0.0198 * x4 * x10 + 0.028 * x6 * x10 - 9.9

    def g10(x):
        _, x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11 = v(x)
        return 16.45 - 0.489 * x3 * x7 - 0.843 * x5 * x6 + 0.0432 * x9 * x10 - 0.0556 * x9 * x11 - 0.000786 * x11**2 - 15.7

    return (g1, g2, g3, g4, g5, g6, g7, g8, g9, g10)


CSP_MATERIALS = (0.192, 0.345)


# -- GTP: gear train ----------------------------------------------------------

GEAR_RATIO = 6.931


def gear_ratio_error(x):
    """Squared deviation of ``Tb*Td / (Ta*Tf)`` from ``1/6.931``."""
    x = np.asarray(x, dtype=float)
    ta, tb, td, tf = (x[..., i] for i in range(4))
    return (1.0 / GEAR_RATIO - tb * td / (ta * tf)) ** 2


def gtp_brute_force(lo: int = 12, hi: int = 60):
    """Exhaustive search over every integer quadruple in ``[lo, hi]^4``.

    Returns ``(best_error, argmins)`` where ``argmins`` lists every quadruple
    ``(Ta, Tb, Td, Tf)`` attaining the minimum.
    """
    t = np.arange(lo, hi + 1, dtype=float)
    num = np.multiply.outer(t, t).ravel()  # Tb*Td, index b*n + d
    den = np.multiply.outer(t, t).ravel()  # Ta*Tf, index a*n + f
    err = (1.0 / GEAR_RATIO - num[None, :] / den[:, None]) ** 2
    best = float(err.min())
    n = len(t)
    rows, cols = np.nonzero(err == best)
    quads = sorted(
        (int(t[r // n]), int(t[c // n]), int(t[c % n]), int(t[r % n])) for r, c in zip(rows, cols)
    )
    return best, quads


# -- PVD: pressure vessel -----------------------------------------------------


def _pvd_f(x):
    ts, th, r, l = (x[..., i] for i in range(4))
    return 0.6224 * ts * r * l + 1.7781 * th * r**2 + 3.1661 * ts**2 * l + 19.84 * ts**2 * r


_PVD_G = (
    lambda x: -_c(x, 0) + 0.0193 * _c(x, 2),
    lambda x: -_c(x, 1) + 0.00954 * _c(x, 2),
    lambda x: -np.pi * _c(x, 2) ** 2 * _c(x, 3) - 4.0 / 3.0 * np.pi * _c(x, 2) ** 3 + 1296000.0,
    lambda x: _c(x, 3) - 240.0,
)


# -- PLD: piston lever --------------------------------------------------------

_PLD_THETA = np.pi / 4
_PLD_Q, _PLD_L, _PLD_MMAX, _PLD_P = 10000.0, 240.0, 1.8e6, 1500.0


def _pld_terms(x):
    H, B, D, X = (x[..., i] for i in range(4))
    s, c = np.sin(_PLD_THETA), np.cos(_PLD_THETA)
    L1 = np.sqrt((X - B) ** 2 + H**2)
    L2 = np.sqrt((X * s + H) ** 2 + (B - X * c) ** 2)
    R = np.abs(-X * (X * s + H) + H * (B - X * c)) / L1
    F = np.pi * _PLD_P * D**2 / 4.0
    return H, B, D, X, L1, L2, R, F


def _pld_f(x):
    _, _, D, _, L1, L2, _, _ = _pld_terms(x)
    return 0.25 * np.pi * D**2 * (L2 - L1)


_PLD_G = (
    lambda x: (lambda t: _PLD_Q * _PLD_L * np.cos(_PLD_THETA) - t[6] * t[7])(_pld_terms(x)),
    lambda x: _PLD_Q * (_PLD_L - _c(x, 3)) - _PLD_MMAX,
    lambda x: (lambda t: 1.2 * (t[5] - t[4]) - t[4])(_pld_terms(x)),
    lambda x: _c(x, 2) / 2.0 - _c(x, 1),
)


# -- SRP: speed reducer -------------------------------------------------------


def _srp_f(x):
    x1, x2, x3, x4, x5, x6, x7 = (x[..., i] for i in range(7))
    return (
        0.7854 * x1 * x2**2 * (3.3333 * x3**2 + 14.9334 * x3 - 43.0934)
        - 1.508 * x1 * (x6**2 + x7**2)
        + 7.4777 * (x6**3 + x7**3)
        + 0.7854 * (x4 * x6**2 + x5 * x7**2)
    )


def _srp_constraints():
    def v(x):
        return [None] + [x[..., i] for i in range(7)]

    def g(k):
        def gk(x):
            _, x1, x2, x3, x4, x5, x6, x7 = v(x)
            return [
                27.0 / (x1 * x2**2 * x3) - 1.0,
                397.5 / (x1 * x2**2 * x3**2) - 1.0,
                1.93 * x4**3 / (x2 * x3 * x6**4) - 1.0,
                1.93 * x5**3 / (x2 * x3 * x7**4) - 1.0,
                np.sqrt((745.0 * x4 / (x2 * x3)) ** 2 + 16.9e6) / (110.0 * x6**3) - 1.0,
                np.sqrt((745.0 * x5 / (x2 * x3)) ** 2 + 157.5e6) / (85.0 * x7**3) - 1.0,
                x2 * x3 / 40.0 - 1.0,
                5.0 * x2 / x1 - 1.0,
                x1 / (12.0 * x2) - 1.0,
                (1.5 * x6 + 1.9) / x4 - 1.0,
                (1.1 * x7 + 1.9) / x5 - 1.0,
            ][k]

        return gk

    return tuple(g(k) for k in range(11))


# -- TCP: tubular column ------------------------------------------------------

_TCP_P, _TCP_SY, _TCP_E, _TCP_L = 2500.0, 500.0, 0.85e6, 250.0


def _tcp_f(x):
    d, t = _c(x, 0), _c(x, 1)
    return 9.8 * d * t + 2.0 * d


_TCP_G = (
    lambda x: _TCP_P / (np.pi * _c(x, 0) * _c(x, 1) * _TCP_SY) - 1.0,
    lambda x: 8.0 * _TCP_P * _TCP_L**2 / (np.pi**3 * _TCP_E * _c(x, 0) * _c(x, 1) * (_c(x, 0) ** 2 + _c(x, 1) ** 2)) - 1.0,
    lambda x: 2.0 / _c(x, 0) - 1.0,
    lambda x: _c(x, 0) / 14.0 - 1.0,
    lambda x: 0.2 / _c(x, 1) - 1.0,
    lambda x: _c(x, 1) / 8.0 - 1.0,
)


# -- WBP: welded beam ---------------------------------------------------------

_WB_P, _WB_L, _WB_E, _WB_G = 6000.0, 14.0, 30e6, 12e6
_WB_TAU, _WB_SIGMA, _WB_DELTA = 13600.0, 30000.0, 0.25


def _wbp_terms(x):
    h, l, t, b = (x[..., i] for i in range(4))
    tau1 = _WB_P / (np.sqrt(2.0) * h * l)
    M = _WB_P * (_WB_L + l / 2.0)
    R = np.sqrt(l**2 / 4.0 + ((h + t) / 2.0) ** 2)
    J = 2.0 * (np.sqrt(2.0) * h * l * (l**2 / 12.0 + ((h + t) / 2.0) ** 2))
    tau2 = M * R / J
    tau = np.sqrt(tau1**2 + 2.0 * tau1 * tau2 * l / (2.0 * R) + tau2**2)
    sigma = 6.0 * _WB_P * _WB_L / (b * t**2)
    delta = 4.0 * _WB_P * _WB_L**3 / (_WB_E * t**3 * b)
    pc = 4.013 * _WB_E * np.sqrt(t**2 * b**6 / 36.0) / _WB_L**2 * (1.0 - t / (2.0 * _WB_L) * np.sqrt(_WB_E / (4.0 * _WB_G)))
    return h, l, t, b, tau, sigma, delta, pc


def _wbp_f(x):
    h, l, t, b = (x[..., i] for i in range(4))
    return 1.10471 * h**2 * l + 0.04811 * t * b * (14.0 + l)


_WBP_G = (
    lambda x: _wbp_terms(x)[4] - _WB_TAU,
    lambda x: _wbp_terms(x)[5] - _WB_SIGMA,
    lambda x: _c(x, 0) - _c(x, 3),
    lambda x: 0.10471 * _c(x, 0) ** 2 + 0.04811 * _c(x, 2) * _c(x, 3) * (14.0 + _c(x, 1)) - 5.0,
    lambda x: 0.125 - _c(x, 0),
    lambda x: _wbp_terms(x)[6] - _WB_DELTA,
    lambda x: _WB_P - _wbp_terms(x)[7],
)


# -- catalog ------------------------------------------------------------------

# best feasible point of 10**6 uniform box samples (seed 0, rejection_sample);
# GTP uses the brute-force optimum instead
_REFERENCE = {
    "BCP": [206.9207695014743, 31.773241019952494, 15.760794943399357, 11.654497126417226, 14.048158454846952, 0.6960105875653667],
    "CBP": [6.310954361703063, 4.464515800439236, 6.15993243820985, 8.518377551030106, 5.498774592771067],
    "CSD": [0.05628425081576313, 0.46952910783310564, 7.259302132088394],
    "CSP": [0.7248712456931734, 1.1815489132493335, 0.5046838530875243, 1.1451147312749483, 1.2755435175770649,
            0.5488924138509511, 0.4591539698264547, 0.345, 0.192, 9.190458370467844, 11.832733751153661],
    "GTP": [49.0, 16.0, 19.0, 43.0],
    "PVD": [1.04271120391014, 0.8152380151978684, 52.043384192776706, 152.90722712928184],
    "PLD": [3.6750523293768436, 6.895595693154552, 2.8987000349910472, 450.73440518329113],
    "SRP": [3.5413424326033915, 0.7056654889083728, 17.0, 7.30425243168046, 8.161174572127399, 3.3697852465586813, 5.295950754725445],
    "TCP": [5.447090335304426, 0.29272641830623314],
    "WBP": [0.22194441843066198, 3.442806813127361, 8.711464012919352, 0.22876647008461407],
}


def _build_catalog(penalty: float = DEFAULT_PENALTY) -> list[ConstrainedProblem]:
    ref = _REFERENCE
    return [
        ConstrainedProblem(
            "BCP", ("L", "B", "D", "T", "Vk", "CB"),
            [150.0, 20.0, 13.0, 10.0, 14.0, 0.63], [274.32, 32.31, 25.0, 11.71, 18.0, 0.75],
            _bcp_f, tuple(_bcp_g(k) for k in range(9)),
            penalty_coefficient=penalty, reference_x=ref["BCP"],
            description="bulk carrier: transport cost per tonne of cargo",
        ),
        ConstrainedProblem(
            "CBP", tuple(f"x{i}" for i in range(1, 6)), [0.01] * 5, [100.0] * 5,
            _cbp_f, (_cbp_g,), penalty_coefficient=penalty, reference_x=ref["CBP"],
            description="cantilever beam weight",
        ),
        ConstrainedProblem(
            "CSD", ("d", "D", "N"), [0.05, 0.25, 2.0], [2.0, 1.3, 15.0],
            _csd_f, _CSD_G, penalty_coefficient=penalty, reference_x=ref["CSD"],
            description="tension/compression spring weight",
        ),
        ConstrainedProblem(
            "CSP", tuple(f"x{i}" for i in range(1, 12)),
            [0.5, 0.45, 0.5, 0.5, 0.875, 0.4, 0.4, 0.192, 0.192, -30.0, -30.0],
            [1.5, 1.35, 1.5, 1.5, 2.625, 1.2, 1.2, 0.345, 0.345, 30.0, 30.0],
            _csp_f, _csp_constraints(), levels={7: CSP_MATERIALS, 8: CSP_MATERIALS},
            penalty_coefficient=penalty, reference_x=ref["CSP"],
            description="car side impact: vehicle weight under crash constraints",
        ),
        ConstrainedProblem(
            "GTP", ("Ta", "Tb", "Td", "Tf"), [12.0] * 4, [60.0] * 4,
            gear_ratio_error, (), integrality=[True] * 4,
            penalty_coefficient=penalty, reference_x=ref["GTP"],
            description="gear train: squared error from the ratio 6.931",
        ),
        ConstrainedProblem(
            "PVD", ("Ts", "Th", "R", "L"), [0.0, 0.0, 10.0, 10.0], [99.0, 99.0, 200.0, 200.0],
            _pvd_f, _PVD_G, penalty_coefficient=penalty, reference_x=ref["PVD"],
            description="pressure vessel cost",
        ),
        ConstrainedProblem(
            "PLD", ("H", "B", "D", "X"), [0.05] * 4, [500.0, 500.0, 120.0, 500.0],
            _pld_f, _PLD_G, penalty_coefficient=penalty, reference_x=ref["PLD"],
            description="piston lever: oil volume",
        ),
        ConstrainedProblem(
            "SRP", tuple(f"z{i}" for i in range(1, 8)),
            [2.6, 0.7, 17.0, 7.3, 7.3, 2.9, 5.0], [3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5],
            _srp_f, _srp_constraints(), integrality=[False, False, True, False, False, False, False],
            penalty_coefficient=penalty, reference_x=ref["SRP"],
            description="speed reducer mass",
        ),
        ConstrainedProblem(
            "TCP", ("d", "t"), [2.0, 0.2], [14.0, 0.8],
            _tcp_f, _TCP_G, penalty_coefficient=penalty, reference_x=ref["TCP"],
            description="tubular column cost",
        ),
        ConstrainedProblem(
            "WBP", ("h", "l", "t", "b"), [0.1, 0.1, 0.1, 0.1], [2.0, 10.0, 10.0, 2.0],
            _wbp_f, _WBP_G, penalty_coefficient=penalty, reference_x=ref["WBP"],
            description="welded beam fabrication cost",
        ),
    ]


def problem_catalog(penalty: float = DEFAULT_PENALTY) -> list[ConstrainedProblem]:
    return _build_catalog(penalty)


def get_engineering(name: str, penalty: float = DEFAULT_PENALTY) -> ConstrainedProblem:
    key = name.strip().upper()
    for p in _build_catalog(penalty):
        if p.name == key:
            return p
    raise KeyError(f"unknown engineering problem {name!r}")


def catalog_json(indent: int = 2) -> str:
    return json.dumps([p.to_dict() for p in problem_catalog()], indent=indent)


def rejection_sample(problem: ConstrainedProblem, n: int, seed: int = 0, batch: int = 100_000):
    """Best feasible point among ``n`` uniform box samples, or None."""
    rng = np.random.default_rng(seed)
    best, best_f = None, np.inf
    done = 0
    while done < n:
        m = min(batch, n - done)
        X = problem.snap(rng.uniform(problem.lower, problem.upper, (m, problem.dim)))
        with np.errstate(all="ignore"):
            ok = np.all(problem.violations(X) == 0.0, axis=1)
            f = np.where(ok, problem.raw(X), np.inf)
        i = int(np.argmin(f))
        if f[i] < best_f:
            best, best_f = X[i].copy(), float(f[i])
        done += m
    return best
