"""Shared value types, search-space geometry and random streams.

Everything in the package minimizes. Positions are stored as float64 numpy
arrays; a :class:`Population` keeps all spider positions in one ``(N, n)``
matrix with the females in the first ``n_female`` rows.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "DimensionError",
    "ParameterError",
    "Bounds",
    "Gender",
    "Spider",
    "Population",
    "ObjectiveSpec",
    "RandomStream",
    "RunRecord",
    "spawn_streams",
    "euclidean_distance",
    "clamp_to_bounds",
]


class DimensionError(ValueError):
    """Vector lengths do not agree."""


class ParameterError(ValueError):
    """An algorithm or configuration parameter is out of range."""


@dataclass(frozen=True)
class Bounds:
    """Axis-aligned box ``[low, high]``."""

    low: np.ndarray
    high: np.ndarray

    def __post_init__(self):
        low = np.atleast_1d(np.asarray(self.low, dtype=np.float64))
        high = np.atleast_1d(np.asarray(self.high, dtype=np.float64))
        if low.ndim != 1 or low.shape != high.shape:
            raise DimensionError(
                f"low and high must be 1-D with equal length, got {low.shape} and {high.shape}"
            )
        if low.size < 1:
            raise DimensionError("bounds need at least one dimension")
        if not np.all(low < high):
            raise ParameterError("every low[j] must be strictly below high[j]")
        low.setflags(write=False)
        high.setflags(write=False)
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "high", high)

    @classmethod
    def uniform(cls, low: float, high: float, n: int) -> "Bounds":
        return cls(np.full(n, low, dtype=np.float64), np.full(n, high, dtype=np.float64))

    @property
    def dimension(self) -> int:
        return self.low.size

    @property
    def width(self) -> np.ndarray:
        return self.high - self.low

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all((x >= self.low) & (x <= self.high)))


class Gender(enum.Enum):
    FEMALE = "female"
    MALE = "male"


@dataclass
class Spider:
    """Snapshot of one population member."""

    position: np.ndarray
    gender: Gender
    fitness: float = np.nan
    weight: float = np.nan


@dataclass
class Population:
    """N spiders, females first, sharing one bounds box.

    ``positions`` has shape ``(N, n)``; rows ``[0, n_female)`` are female.
    ``fitness`` and ``weights`` are per-row caches filled by the engine.
    """

    positions: np.ndarray
    n_female: int
    bounds: Bounds
    fitness: np.ndarray = field(default=None)
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=np.float64)
        if self.positions.ndim != 2 or self.positions.shape[1] != self.bounds.dimension:
            raise DimensionError(
                f"positions must have shape (N, {self.bounds.dimension}), got {self.positions.shape}"
            )
        if not 0 <= self.n_female <= self.positions.shape[0]:
            raise ParameterError("n_female out of range")
        n = self.positions.shape[0]
        if self.fitness is None:
            self.fitness = np.full(n, np.nan)
        if self.weights is None:
            self.weights = np.full(n, np.nan)

    @property
    def size(self) -> int:
        return self.positions.shape[0]

    @property
    def n_male(self) -> int:
        return self.size - self.n_female

    @property
    def females(self) -> np.ndarray:
        return self.positions[: self.n_female]

    @property
    def males(self) -> np.ndarray:
        return self.positions[self.n_female :]

    def gender(self, i: int) -> Gender:
        return Gender.FEMALE if i < self.n_female else Gender.MALE

    def spider(self, i: int) -> Spider:
        return Spider(
            position=self.positions[i].copy(),
            gender=self.gender(i),
            fitness=float(self.fitness[i]),
            weight=float(self.weights[i]),
        )

    def __len__(self):
        return self.size

    def __iter__(self):
        return (self.spider(i) for i in range(self.size))

    def copy(self) -> "Population":
        return Population(
            self.positions.copy(),
            self.n_female,
            self.bounds,
            self.fitness.copy(),
            self.weights.copy(),
        )


@dataclass(frozen=True)
class ObjectiveSpec:
    """A minimization problem.

    ``evaluate(x, rng)`` maps one position to a float. ``rng`` is only
    consumed by stochastic objectives; deterministic ones ignore it.
    ``evaluate_batch`` (optional) does the same row-wise for an ``(m, n)``
    array and must draw from ``rng`` in row order so both paths agree.
    """

    name: str
    bounds: Bounds
    evaluate: Callable[..., float]
    optimum_value: Optional[float] = None
    optimum_point: Optional[np.ndarray] = None
    evaluate_batch: Optional[Callable[..., np.ndarray]] = None

    @property
    def dimension(self) -> int:
        return self.bounds.dimension

    def __call__(self, x, rng: "RandomStream | None" = None) -> float:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.dimension,):
            raise DimensionError(f"{self.name} expects length {self.dimension}, got {x.shape}")
        return float(self.evaluate(x, rng))

    def batch(self, xs, rng: "RandomStream | None" = None) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.float64)
        if xs.ndim != 2 or xs.shape[1] != self.dimension:
            raise DimensionError(f"{self.name} expects rows of length {self.dimension}, got {xs.shape}")
        if self.evaluate_batch is not None:
            return np.asarray(self.evaluate_batch(xs, rng), dtype=np.float64)
        return np.array([float(self.evaluate(x, rng)) for x in xs])


@dataclass
class RunRecord:
    """Outcome of one optimizer run.

    ``best_so_far_trace[k]`` is the lowest objective value seen after
    iteration ``k + 1``. A run with zero iterations carries a single entry,
    the best of the initial population.
    """

    best_position: np.ndarray
    best_fitness: float
    best_so_far_trace: np.ndarray
    evaluations: int
    algorithm: str = "sso"
    iterations: int = 0
    extras: dict = field(default_factory=dict)


class RandomStream:
    """Seeded uniform/integer source backed by numpy's PCG64.

    Single-owner: do not share one stream between concurrent runs.
    """

    def __init__(self, seed=None):
        if isinstance(seed, np.random.SeedSequence):
            self._gen = np.random.Generator(np.random.PCG64(seed))
        else:
            self._gen = np.random.default_rng(seed)

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def uniform(self, size=None):
        """Draws in ``[0, 1)``."""
        return self._gen.random(size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size=size)


def spawn_streams(seed: int, names: Sequence[str]) -> dict:
    """Derive one independent named sub-stream per purpose from a root seed."""
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {name: RandomStream(child) for name, child in zip(names, children)}


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def clamp_to_bounds(x, bounds: Bounds) -> np.ndarray:
    """Project ``x`` (a vector or a stack of row vectors) into ``bounds``."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != bounds.dimension:
        raise DimensionError(f"expected trailing length {bounds.dimension}, got {x.shape}")
    return np.clip(x, bounds.low, bounds.high)
