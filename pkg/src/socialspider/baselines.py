"""Reference optimizers for comparison: global-best PSO and canonical ABC.

Both share SSO's conventions: minimization, per-purpose random sub-streams
derived from one seed, clamping to bounds, and a best-so-far trace with
one entry per iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ObjectiveSpec, ParameterError, RunRecord, clamp_to_bounds, spawn_streams

__all__ = [
    "PsoParams",
    "AbcParams",
    "inertia",
    "pso_step",
    "pso_run",
    "abc_fitness",
    "onlooker_probabilities",
    "abc_run",
]

STREAMS = ("init", "operators", "objective")


@dataclass(frozen=True)
class PsoParams:
    population_size: int = 50
    max_iterations: int = 1000
    c1: float = 2.0
    c2: float = 2.0
    inertia_start: float = 0.9
    inertia_end: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 1:
            raise ParameterError("population_size must be positive")
        if self.max_iterations < 0:
            raise ParameterError("max_iterations must be >= 0")
        if self.c1 <= 0 or self.c2 <= 0:
            raise ParameterError("c1 and c2 must be positive")


@dataclass(frozen=True)
class AbcParams:
    colony_size: int = 50
    max_iterations: int = 1000
    limit: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.colony_size < 4:
            raise ParameterError("colony_size must be >= 4 (at least two food sources)")
        if self.max_iterations < 0:
            raise ParameterError("max_iterations must be >= 0")
        if self.limit < 1:
            raise ParameterError("limit must be >= 1")


def inertia(t: int, max_iterations: int, start: float = 0.9, end: float = 0.2) -> float:
    """Linearly decreasing inertia; ``t`` counts from 0 to ``max_iterations - 1``."""
    if max_iterations <= 1:
        return start
    return start - (start - end) * t / (max_iterations - 1)


def pso_step(x, v, pbest, gbest, w, c1, c2, r1, r2, bounds):
    """One velocity/position update; returns clamped ``(x, v)``."""
    vmax = bounds.width
    v = w * v + c1 * r1 * (pbest - x) + c2 * r2 * (gbest - x)
    v = np.clip(v, -vmax, vmax)
    return clamp_to_bounds(x + v, bounds), v


def pso_run(spec: ObjectiveSpec, params: PsoParams) -> RunRecord:
    streams = spawn_streams(params.seed, STREAMS)
    init, ops, noise_rng = (streams[k] for k in STREAMS)
    b = spec.bounds
    n, m = b.dimension, params.population_size

    x = b.low + init.uniform((m, n)) * b.width
    v = np.zeros_like(x)
    fx = spec.batch(x, noise_rng)
    evaluations = m
    pbest, pbest_f = x.copy(), fx.copy()
    g = int(np.argmin(pbest_f))
    gbest, gbest_f = pbest[g].copy(), float(pbest_f[g])

    trace = []
    for t in range(params.max_iterations):
        w = inertia(t, params.max_iterations, params.inertia_start, params.inertia_end)
        r1, r2 = ops.uniform((2, m, n))
        x, v = pso_step(x, v, pbest, gbest, w, params.c1, params.c2, r1, r2, b)
        fx = spec.batch(x, noise_rng)
        evaluations += m
        improved = fx < pbest_f
        pbest[improved] = x[improved]
        pbest_f[improved] = fx[improved]
        g = int(np.argmin(pbest_f))
        if pbest_f[g] < gbest_f:
            gbest, gbest_f = pbest[g].copy(), float(pbest_f[g])
        trace.append(gbest_f)

    if not trace:
        trace.append(gbest_f)
    return RunRecord(gbest, gbest_f, np.asarray(trace), evaluations, "pso", params.max_iterations)


def abc_fitness(f):
    """Quality transform used for onlooker selection: 1/(1+f) or 1+|f|."""
    f = np.asarray(f, dtype=np.float64)
    return np.where(f >= 0, 1.0 / (1.0 + np.abs(f)), 1.0 + np.abs(f))


def onlooker_probabilities(f) -> np.ndarray:
    q = abc_fitness(f)
    return q / q.sum()


def _neighbour_candidates(x, targets, ops):
    """``v = x_i + phi (x_i - x_k)`` on one random coordinate, ``k != i``."""
    sn, n = x.shape
    count = len(targets)
    k = ops.integers(0, sn - 1, size=count)
    k = k + (k >= targets)  # skip the source itself
    j = ops.integers(0, n, size=count)
    phi = ops.uniform(count) * 2.0 - 1.0
    v = x[targets].copy()
    rows = np.arange(count)
    v[rows, j] = x[targets, j] + phi * (x[targets, j] - x[k, j])
    return v


def abc_run(spec: ObjectiveSpec, params: AbcParams) -> RunRecord:
    """Canonical ABC with employed, onlooker and scout phases.

    Half the colony are food sources. Within a phase all candidates are
    generated from the phase's starting positions and then accepted greedily
    in source order; repeated onlooker picks of one source see the result of
    the earlier pick.
    """
    streams = spawn_streams(params.seed, STREAMS)
    init, ops, noise_rng = (streams[k] for k in STREAMS)
    b = spec.bounds
    n = b.dimension
    sn = params.colony_size // 2

    x = b.low + init.uniform((sn, n)) * b.width
    fx = spec.batch(x, noise_rng)
    trials = np.zeros(sn, dtype=np.int64)
    evaluations = sn
    i = int(np.argmin(fx))
    best_x, best_f = x[i].copy(), float(fx[i])

    def accept(targets, cand, fc):
        for t, c, f in zip(targets, cand, fc):
            if f < fx[t]:
                x[t], fx[t], trials[t] = c, f, 0
            else:
                trials[t] += 1

    trace = []
    for _ in range(params.max_iterations):
        # employed bees
        targets = np.arange(sn)
        cand = clamp_to_bounds(_neighbour_candidates(x, targets, ops), b)
        fc = spec.batch(cand, noise_rng)
        evaluations += sn
        accept(targets, cand, fc)

        # onlookers pick sources by roulette over transformed quality
        cum = np.cumsum(onlooker_probabilities(fx))
        targets = np.minimum(np.searchsorted(cum, ops.uniform(sn), side="right"), sn - 1)
        cand = clamp_to_bounds(_neighbour_candidates(x, targets, ops), b)
        fc = spec.batch(cand, noise_rng)
        evaluations += sn
        accept(targets, cand, fc)

        j = int(np.argmin(fx))
        if fx[j] < best_f:
            best_x, best_f = x[j].copy(), float(fx[j])

        # scouts
        exhausted = np.flatnonzero(trials > params.limit)
        if exhausted.size:
            x[exhausted] = b.low + init.uniform((exhausted.size, n)) * b.width
            fx[exhausted] = spec.batch(x[exhausted], noise_rng)
            trials[exhausted] = 0
            evaluations += exhausted.size
            j = int(np.argmin(fx))
            if fx[j] < best_f:
                best_x, best_f = x[j].copy(), float(fx[j])
        trace.append(best_f)

    if not trace:
        trace.append(best_f)
    return RunRecord(best_x, best_f, np.asarray(trace), evaluations, "abc", params.max_iterations)
