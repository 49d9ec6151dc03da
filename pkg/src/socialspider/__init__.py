"""Social Spider Optimization with PSO/ABC baselines, a 19-function
benchmark suite and a seeded comparison harness."""

from .core import Bounds, ObjectiveSpec, Population, RandomStream, RunRecord, clamp_to_bounds, euclidean_distance
from .sso import SsoParams, run

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "ObjectiveSpec",
    "Population",
    "RandomStream",
    "RunRecord",
    "SsoParams",
    "clamp_to_bounds",
    "euclidean_distance",
    "run",
]
