"""Classical benchmark functions and shift/rotate/hybrid/composition combinators.

All base functions are vectorized over the last axis: ``f(x)`` accepts a
``(dim,)`` vector or an ``(n, dim)`` stack and returns a float or ``(n,)``.

TID table (classical suite)::

    CL1  Sphere            U     CL11 Rastrigin         M
    CL2  Rosenbrock        U     CL12 Ackley            M
    CL3  Schwefel 2.22     U     CL13 Griewank          M
    CL4  Schwefel 1.2      U     CL14 Schwefel 2.26     M
    CL5  Schwefel 2.21     U     CL15 Levy              M
    CL6  Step              U     CL16 Michalewicz       M
    CL7  Quartic + noise   U     CL17 Penalized 1       M
    CL8  Sum of squares    U     CL18 Penalized 2       M
    CL9  Zakharov          U     CL19 Alpine N.1        M
    CL10 Dixon-Price       U     CL20 Salomon           M

CEC-style stand-ins built from the combinators (suite ``cec-like``; these are
not official CEC functions)::

    CX1  shifted + rotated Rastrigin
    CX2  shifted + rotated Ackley
    CX3  shifted + rotated hybrid (Rastrigin | Ackley | Sphere)
    CX4  shifted + rotated composition 0.5 Rastrigin + 0.3 Griewank + 0.2 Sphere
"""

from __future__ import annotations

import hashlib
import json
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.stats import ortho_group

from .core import BoundedProblem

# -- base functions -----------------------------------------------------------


def sphere(x):
    x = np.asarray(x, dtype=float)
    return np.sum(x**2, axis=-1)


def rosenbrock(x):
    x = np.asarray(x, dtype=float)
    return np.sum(100.0 * (x[..., 1:] - x[..., :-1] ** 2) ** 2 + (x[..., :-1] - 1.0) ** 2, axis=-1)


def schwefel_2_22(x):
    a = np.abs(np.asarray(x, dtype=float))
    return np.sum(a, axis=-1) + np.prod(a, axis=-1)


def schwefel_1_2(x):
    x = np.asarray(x, dtype=float)
    return np.sum(np.cumsum(x, axis=-1) ** 2, axis=-1)


def schwefel_2_21(x):
    return np.max(np.abs(np.asarray(x, dtype=float)), axis=-1)


def step(x):
    x = np.asarray(x, dtype=float)
    return np.sum(np.floor(x + 0.5) ** 2, axis=-1)


def quartic(x):
    """Noise-free part of the quartic function; see :func:`quartic_noise`."""
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(i * x**4, axis=-1)


def _hash_uniform(x: np.ndarray, seed: int) -> np.ndarray:
    """Deterministic U[0,1) value per row, keyed by the row's bytes and ``seed``."""
    x = np.ascontiguousarray(np.atleast_2d(x), dtype=float)
    key = int(seed).to_bytes(8, "little", signed=False)
    out = np.empty(len(x))
    for k, row in enumerate(x):
        h = hashlib.blake2b(row.tobytes(), digest_size=8, key=key).digest()
        out[k] = (int.from_bytes(h, "little") >> 11) * 2.0**-53
    return out


def quartic_noise(seed: int = 0) -> Callable:
    """Quartic function plus U[0,1) noise that is a fixed function of (x, seed)."""

    def f(x):
        x = np.asarray(x, dtype=float)
        noise = _hash_uniform(x, seed)
        return quartic(x) + (noise[0] if x.ndim == 1 else noise)

    return f


def sum_squares(x):
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(i * x**2, axis=-1)


def zakharov(x):
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.shape[-1] + 1)
    s = np.sum(0.5 * i * x, axis=-1)
    return np.sum(x**2, axis=-1) + s**2 + s**4


def dixon_price(x):
    x = np.asarray(x, dtype=float)
    i = np.arange(2, x.shape[-1] + 1)
    return (x[..., 0] - 1.0) ** 2 + np.sum(i * (2.0 * x[..., 1:] ** 2 - x[..., :-1]) ** 2, axis=-1)


def dixon_price_minimizer(dim: int) -> np.ndarray:
    i = np.arange(1, dim + 1, dtype=float)
    return 2.0 ** (-(1.0 - 2.0 ** (1.0 - i)))


def rastrigin(x):
    x = np.asarray(x, dtype=float)
    return np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def ackley(x):
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    a = -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x**2, axis=-1) / d))
    b = -np.exp(np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d)
    return a + b + 20.0 + np.e


def griewank(x):
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(x**2, axis=-1) / 4000.0 - np.prod(np.cos(x / np.sqrt(i)), axis=-1) + 1.0


SCHWEFEL_X = 420.96874635998205
SCHWEFEL_C = 418.9828872724337


def schwefel_2_26(x):
    x = np.asarray(x, dtype=float)
    return np.sum(SCHWEFEL_C - x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def levy(x):
    x = np.asarray(x, dtype=float)
    w = 1.0 + (x - 1.0) / 4.0
    head = np.sin(np.pi * w[..., 0]) ** 2
    mid = np.sum((w[..., :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * w[..., :-1] + 1.0) ** 2), axis=-1)
    tail = (w[..., -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * w[..., -1]) ** 2)
    return head + mid + tail


def michalewicz(x, m: int = 10):
    x = np.asarray(x, dtype=float)
    i = np.arange(1, x.shape[-1] + 1)
    return -np.sum(np.sin(x) * np.sin(i * x**2 / np.pi) ** (2 * m), axis=-1)


# best known values; no closed-form minimizer
MICHALEWICZ_OPTIMA = {2: -1.8013034100985537, 5: -4.687658, 10: -9.66015}


def _u(x, a, k, m):
    return np.where(x > a, k * (x - a) ** m, np.where(x < -a, k * (-x - a) ** m, 0.0))


def penalized_1(x):
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    y = 1.0 + (x + 1.0) / 4.0
    core = (
        10.0 * np.sin(np.pi * y[..., 0]) ** 2
        + np.sum((y[..., :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[..., 1:]) ** 2), axis=-1)
        + (y[..., -1] - 1.0) ** 2
    )
    return np.pi / d * core + np.sum(_u(x, 10.0, 100.0, 4), axis=-1)


def penalized_2(x):
    x = np.asarray(x, dtype=float)
    core = (
        np.sin(3.0 * np.pi * x[..., 0]) ** 2
        + np.sum((x[..., :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[..., 1:]) ** 2), axis=-1)
        + (x[..., -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[..., -1]) ** 2)
    )
    return 0.1 * core + np.sum(_u(x, 5.0, 100.0, 4), axis=-1)


def alpine_1(x):
    x = np.asarray(x, dtype=float)
    return np.sum(np.abs(x * np.sin(x) + 0.1 * x), axis=-1)


def salomon(x):
    r = np.sqrt(sphere(x))
    return 1.0 - np.cos(2.0 * np.pi * r) + 0.1 * r


# -- transforms ---------------------------------------------------------------


@dataclass(frozen=True)
class TransformSpec:
    """Change of variables ``z = R (x - shift)`` and optional mixing weights.

    ``weights`` (non-negative, summing to one) turn a list of base functions
    into the composition ``sum_k w_k f_k(z)``.
    """

    shift: Optional[np.ndarray] = None
    rotation: Optional[np.ndarray] = None
    weights: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.shift is not None:
            object.__setattr__(self, "shift", np.asarray(self.shift, dtype=float))
        if self.rotation is not None:
            R = np.asarray(self.rotation, dtype=float)
            if R.ndim != 2 or R.shape[0] != R.shape[1]:
                raise ValueError("rotation must be a square matrix")
            if not np.allclose(R.T @ R, np.eye(len(R)), rtol=0.0, atol=1e-9):
                raise ValueError("rotation matrix is not orthogonal")
            if self.shift is not None and self.shift.shape != (len(R),):
                raise ValueError("shift and rotation dimensions differ")
            object.__setattr__(self, "rotation", R)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
                raise ValueError("composition weights must be non-negative and sum to 1")
            object.__setattr__(self, "weights", w)

    def map(self, x) -> np.ndarray:
        z = np.asarray(x, dtype=float)
        if self.shift is not None:
            z = z - self.shift
        if self.rotation is not None:
            z = z @ self.rotation.T
        return z

    def minimizer(self, base_minimizer) -> np.ndarray:
        """Where the transformed function attains the base minimum."""
        z = np.asarray(base_minimizer, dtype=float)
        if self.rotation is not None:
            z = self.rotation.T @ z
        if self.shift is not None:
            z = z + self.shift
        return z


def apply_transform(spec: TransformSpec, base, x):
    """Evaluate ``base(R (x - shift))``, or the weighted sum over ``base`` when
    ``spec.weights`` is set."""
    z = spec.map(x)
    if spec.weights is None:
        if not callable(base):
            raise TypeError("base must be callable when no weights are given")
        return base(z)
    bases = list(base)
    if len(bases) != len(spec.weights):
        raise ValueError("need one base function per weight")
    return sum(w * f(z) for w, f in zip(spec.weights, bases))


def hybrid(bases: Sequence[Callable], fractions: Sequence[float], permutation=None) -> Callable:
    """Split the (permuted) variables into consecutive groups, one per base.

    Group sizes follow ``fractions``; the last group takes the remainder.
    """
    fractions = np.asarray(fractions, dtype=float)
    if len(fractions) != len(bases) or np.any(fractions <= 0) or abs(fractions.sum() - 1.0) > 1e-12:
        raise ValueError("fractions must be positive, one per base, summing to 1")

    def f(x):
        x = np.asarray(x, dtype=float)
        d = x.shape[-1]
        if d < len(bases):
            raise ValueError(f"hybrid of {len(bases)} functions needs dim >= {len(bases)}")
        perm = np.arange(d) if permutation is None else np.asarray(permutation)
        if perm.shape != (d,):
            raise ValueError("permutation length must equal dim")
        xp = x[..., perm]
        sizes = np.maximum(1, np.floor(fractions[:-1] * d).astype(int))
        cuts = np.cumsum(sizes)
        parts = np.split(xp, cuts, axis=-1)
        return sum(g(part) for g, part in zip(bases, parts))

    return f


# -- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class BenchmarkSpec:
    tid: str
    base: str
    dim: int
    lower: float
    upper: float
    optimum_f: Optional[float]
    modality: str
    suite: str = "classical"
    scalable: bool = True
    build: Callable = field(default=None, repr=False, compare=False)

    @property
    def optimum_x(self) -> Optional[np.ndarray]:
        return self.minimizer(self.dim)

    def minimizer(self, dim: int) -> Optional[np.ndarray]:
        return self.build(dim, 0)[1]

    def optimum_at(self, dim: int) -> Optional[float]:
        return self.build(dim, 0)[2]

    def function(self, dim: Optional[int] = None, seed: int = 0) -> Callable:
        return self.build(self.dim if dim is None else dim, seed)[0]

    def problem(self, dim: Optional[int] = None, seed: int = 0) -> BoundedProblem:
        dim = self.dim if dim is None else int(dim)
        if not self.scalable and dim != self.dim:
            raise ValueError(f"{self.tid} is defined only for dim={self.dim}")
        f, _, fopt = self.build(dim, seed)
        return BoundedProblem(
            name=self.tid,
            dim=dim,
            lower=np.full(dim, self.lower),
            upper=np.full(dim, self.upper),
            objective=lambda x: float(f(x)),
            known_optimum=fopt,
            batch=f,
        )

    def to_dict(self) -> dict:
        x = self.optimum_x
        return {
            "tid": self.tid,
            "base": self.base,
            "dim": self.dim,
            "bounds": [self.lower, self.upper],
            "optimum_f": self.optimum_f,
            "optimum_x": None if x is None else x.tolist(),
            "modality": self.modality,
            "suite": self.suite,
        }


_REGISTRY: dict[str, BenchmarkSpec] = {}


def register(spec: BenchmarkSpec) -> BenchmarkSpec:
    if spec.tid in _REGISTRY:
        raise ValueError(f"duplicate tid {spec.tid}")
    _REGISTRY[spec.tid] = spec
    return spec


def _fixed(fn, minimizer=None, fopt=0.0):
    """Builder for a deterministic base function with a known optimum."""

    def build(dim, seed):
        x = None if minimizer is None else np.asarray(minimizer(dim), dtype=float)
        return fn, x, fopt

    return build


def _zeros(d):
    return np.zeros(d)


def _ones(d):
    return np.ones(d)


def _build_quartic(dim, seed):
    return quartic_noise(seed), None, 0.0


def _build_michalewicz(dim, seed):
    return michalewicz, None, MICHALEWICZ_OPTIMA.get(dim)


_CLASSICAL = [
    ("CL1", "sphere", sphere, -100, 100, _zeros, "unimodal"),
    ("CL2", "rosenbrock", rosenbrock, -30, 30, _ones, "unimodal"),
    ("CL3", "schwefel_2_22", schwefel_2_22, -10, 10, _zeros, "unimodal"),
    ("CL4", "schwefel_1_2", schwefel_1_2, -100, 100, _zeros, "unimodal"),
    ("CL5", "schwefel_2_21", schwefel_2_21, -100, 100, _zeros, "unimodal"),
    ("CL6", "step", step, -100, 100, _zeros, "unimodal"),
    ("CL7", "quartic_noise", None, -1.28, 1.28, None, "unimodal"),
    ("CL8", "sum_squares", sum_squares, -10, 10, _zeros, "unimodal"),
    ("CL9", "zakharov", zakharov, -5, 10, _zeros, "unimodal"),
    ("CL10", "dixon_price", dixon_price, -10, 10, dixon_price_minimizer, "unimodal"),
    ("CL11", "rastrigin", rastrigin, -5.12, 5.12, _zeros, "multimodal"),
    ("CL12", "ackley", ackley, -32, 32, _zeros, "multimodal"),
    ("CL13", "griewank", griewank, -600, 600, _zeros, "multimodal"),
    ("CL14", "schwefel_2_26", schwefel_2_26, -500, 500, lambda d: np.full(d, SCHWEFEL_X), "multimodal"),
    ("CL15", "levy", levy, -10, 10, _ones, "multimodal"),
    ("CL16", "michalewicz", None, 0, np.pi, None, "multimodal"),
    ("CL17", "penalized_1", penalized_1, -50, 50, lambda d: -np.ones(d), "multimodal"),
    ("CL18", "penalized_2", penalized_2, -50, 50, _ones, "multimodal"),
    ("CL19", "alpine_1", alpine_1, -10, 10, _zeros, "multimodal"),
    ("CL20", "salomon", salomon, -100, 100, _zeros, "multimodal"),
]

CLASSICAL_DIM = 30

for _tid, _name, _fn, _lo, _hi, _xmin, _mod in _CLASSICAL:
    if _name == "quartic_noise":
        _build, _dim, _fopt = _build_quartic, CLASSICAL_DIM, 0.0
    elif _name == "michalewicz":
        _build, _dim, _fopt = _build_michalewicz, 10, MICHALEWICZ_OPTIMA[10]
    else:
        _build, _dim, _fopt = _fixed(_fn, _xmin), CLASSICAL_DIM, 0.0
    register(BenchmarkSpec(_tid, _name, _dim, float(_lo), float(_hi), _fopt, _mod, build=_build))


def random_transform(dim: int, lower: float, upper: float, seed: int, rotate: bool = True, weights=None) -> TransformSpec:
    """Shift drawn uniformly from the inner 80% of the box, Haar-random rotation."""
    rng = np.random.default_rng(seed)
    half = 0.4 * (upper - lower)
    mid = 0.5 * (upper + lower)
    shift = rng.uniform(mid - half, mid + half, dim)
    R = ortho_group.rvs(dim, random_state=rng) if rotate and dim > 1 else None
    return TransformSpec(shift=shift, rotation=R, weights=weights)


def _transformed(base, lower, upper, tag: int, weights=None):
    @lru_cache(maxsize=None)
    def build(dim, seed):
        spec = random_transform(dim, lower, upper, seed=1000 * tag + dim, weights=weights)
        return (lambda x: apply_transform(spec, base, x)), spec.minimizer(np.zeros(dim)), 0.0

    return build


def _hybrid_build(dim, seed):
    rng = np.random.default_rng(3000 + dim)
    perm = rng.permutation(dim)
    fn = hybrid([rastrigin, ackley, sphere], [0.3, 0.3, 0.4], perm)
    return _transformed(fn, -10.0, 10.0, 3)(dim, seed)


register(BenchmarkSpec("CX1", "sr_rastrigin", 10, -5.12, 5.12, 0.0, "multimodal", "cec-like", build=_transformed(rastrigin, -5.12, 5.12, 1)))
register(BenchmarkSpec("CX2", "sr_ackley", 10, -32.0, 32.0, 0.0, "multimodal", "cec-like", build=_transformed(ackley, -32.0, 32.0, 2)))
register(BenchmarkSpec("CX3", "sr_hybrid", 10, -10.0, 10.0, 0.0, "multimodal", "cec-like", build=_hybrid_build))
register(
    BenchmarkSpec(
        "CX4", "sr_composition", 10, -10.0, 10.0, 0.0, "multimodal", "cec-like",
        build=_transformed([rastrigin, griewank, sphere], -10.0, 10.0, 4, weights=[0.5, 0.3, 0.2]),
    )
)


def registry(suite: Optional[str] = None) -> list[BenchmarkSpec]:
    specs = list(_REGISTRY.values())
    return specs if suite is None else [s for s in specs if s.suite == suite]


def get_spec(name: str) -> BenchmarkSpec:
    """Look up by TID (``CL11``) or base name (``rastrigin``), case-insensitive."""
    key = name.strip().lower()
    for spec in _REGISTRY.values():
        if spec.tid.lower() == key or (spec.suite == "classical" and spec.base == key):
            return spec
    raise KeyError(f"unknown benchmark {name!r}")


def get_problem(name: str, dim: Optional[int] = None, seed: int = 0) -> BoundedProblem:
    return get_spec(name).problem(dim, seed)


def evaluate(tid: str, x, seed: int = 0) -> float:
    spec = get_spec(tid)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) != spec.dim:
        raise ValueError(f"{spec.tid} expects a vector of length {spec.dim}, got shape {x.shape}")
    return float(spec.function(seed=seed)(x))


def catalog_json(indent: int = 2) -> str:
    return json.dumps([s.to_dict() for s in registry()], indent=indent)
