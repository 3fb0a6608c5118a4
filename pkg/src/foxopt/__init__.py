"""FOX and Improved FOX (IFOX) optimizers with benchmark and comparison tooling."""

from .core import BoundedProblem, OptimizerConfig, RunTrace, clamp, levy_flight, make_rng, uniform
from .fox import FOX, fox_run
from .ifox import IFOX, ifox_run

__all__ = [
    "BoundedProblem",
    "OptimizerConfig",
    "RunTrace",
    "FOX",
    "IFOX",
    "fox_run",
    "ifox_run",
    "clamp",
    "levy_flight",
    "make_rng",
    "uniform",
]

__version__ = "0.1.0"
