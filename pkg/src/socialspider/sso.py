"""Social Spider Optimization.

The colony is split into a female majority and a male minority. Females
are pulled toward (or pushed away from) the nearest heavier spider and the
best spider; dominant males chase the nearest female, non-dominant males
drift to the weighted male centroid; dominant males mate with females in
range and the brood replaces the worst spider when it is strictly better.

Each scalar operation below has a vectorized twin used by :func:`run`; the
twins share the same arithmetic helpers so the two cannot drift apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    Bounds,
    ObjectiveSpec,
    ParameterError,
    Population,
    RandomStream,
    RunRecord,
    clamp_to_bounds,
    spawn_streams,
)

__all__ = [
    "SsoParams",
    "VibrationContext",
    "RunRecord",
    "split_population",
    "initialize_population",
    "assign_weights",
    "vibration",
    "distance_matrix",
    "find_vibc_source",
    "find_vibb_source",
    "find_vibf_source",
    "vibration_context",
    "female_step",
    "female_move",
    "median_male_weight",
    "classify_males",
    "male_step",
    "male_weighted_mean",
    "male_move",
    "mating_radius",
    "roulette_probabilities",
    "roulette_select",
    "mate",
    "brood_weight",
    "survive_replace",
    "run",
]

STREAMS = ("init", "operators", "objective")
DISTANCE_SCALES = ("raw", "diagonal")


@dataclass(frozen=True)
class SsoParams:
    population_size: int = 50
    max_iterations: int = 1000
    pf: float = 0.7
    seed: int = 0
    distance_scale: str = "raw"

    def __post_init__(self):
        if self.distance_scale not in DISTANCE_SCALES:
            raise ParameterError(f"distance_scale must be one of {DISTANCE_SCALES}, got {self.distance_scale!r}")
        if self.population_size < 4:
            raise ParameterError(f"population_size must be >= 4, got {self.population_size}")
        if self.max_iterations < 0:
            raise ParameterError(f"max_iterations must be >= 0, got {self.max_iterations}")
        if not 0.0 <= self.pf <= 1.0:
            raise ParameterError(f"pf must lie in [0, 1], got {self.pf}")


@dataclass(frozen=True)
class VibrationContext:
    vibc_source_index: int
    vibb_source_index: int
    vibf_source_index: Optional[int]
    vibc: float
    vibb: float
    vibf: Optional[float]


# -- population set-up ------------------------------------------------------


def split_population(n_total: int, rng: RandomStream) -> tuple[int, int]:
    """Female/male head counts; females are 65-90% of the colony."""
    if n_total < 4:
        raise ParameterError(f"population needs at least 4 spiders, got {n_total}")
    n_female = _female_count(n_total, float(rng.uniform()))
    return n_female, n_total - n_female


def _female_count(n_total, u):
    return int(math.floor((0.9 - u * 0.25) * n_total))


def initialize_population(spec: ObjectiveSpec, n_female: int, n_male: int, rng: RandomStream) -> Population:
    if n_female < 1 or n_male < 1:
        raise ParameterError("need at least one female and one male")
    b = spec.bounds
    u = rng.uniform((n_female + n_male, b.dimension))
    return Population(b.low + u * (b.high - b.low), n_female, b)


# -- weights and vibrations -------------------------------------------------


def assign_weights(pop: Optional[Population], fitnesses) -> np.ndarray:
    """Min-max normalized quality: best (lowest) fitness -> 1, worst -> 0.

    When every fitness is equal all weights are 1. ``pop`` is accepted for
    symmetry with the other operations and may be ``None``.
    """
    f = np.asarray(fitnesses, dtype=np.float64)
    best, worst = f.min(), f.max()
    if worst == best:
        return np.ones_like(f)
    return (worst - f) / (worst - best)


def vibration(w_source, d):
    """Perceived vibration ``w * exp(-d**2)``."""
    return w_source * np.exp(-np.square(d))


def distance_matrix(a, b=None) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    b = a if b is None else np.asarray(b, dtype=np.float64)
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _nearest_heavier(dist, weights):
    heavier = weights[None, :] > weights[:, None]
    masked = np.where(heavier, dist, np.inf)
    # argmin returns the first minimum, i.e. lowest index on ties
    src = np.argmin(masked, axis=1)
    lonely = ~heavier.any(axis=1)
    src[lonely] = np.flatnonzero(lonely)
    return src


def find_vibc_source(i: int, pop: Population, weights) -> int:
    """Nearest spider strictly heavier than ``i``; ``i`` itself when none is."""
    weights = np.asarray(weights, dtype=np.float64)
    dist = distance_matrix(pop.positions[i : i + 1], pop.positions)
    heavier = weights > weights[i]
    if not heavier.any():
        return i
    return int(np.argmin(np.where(heavier, dist[0], np.inf)))


def find_vibb_source(pop: Optional[Population], weights) -> int:
    return int(np.argmax(np.asarray(weights)))


def find_vibf_source(i: int, pop: Population) -> int:
    if pop.n_female < 1:
        raise ParameterError("population has no females")
    d = distance_matrix(pop.positions[i : i + 1], pop.females)[0]
    return int(np.argmin(d))


def vibration_context(i: int, pop: Population, weights) -> VibrationContext:
    weights = np.asarray(weights, dtype=np.float64)
    x = pop.positions[i]
    c = find_vibc_source(i, pop, weights)
    b = find_vibb_source(pop, weights)
    vibc = float(vibration(weights[c], np.linalg.norm(pop.positions[c] - x)))
    vibb = float(vibration(weights[b], np.linalg.norm(pop.positions[b] - x)))
    f = vibf = None
    if i >= pop.n_female:
        f = find_vibf_source(i, pop)
        vibf = float(vibration(weights[f], np.linalg.norm(pop.positions[f] - x)))
    return VibrationContext(c, b, f, vibc, vibb, vibf)


# -- cooperative operators --------------------------------------------------


def female_step(f, s_c, vibc, s_b, vibb, attract, alpha, beta, delta, noise):
    """Female update before clamping. Broadcasts over leading axes.

    ``attract`` selects the sign of the two pull terms; ``noise`` holds the
    per-dimension uniforms in [0, 1).
    """
    sign = np.where(attract, 1.0, -1.0)
    sign, alpha, beta, delta, vibc, vibb = (
        np.asarray(v, dtype=np.float64)[..., None] if np.ndim(v) else v
        for v in (sign, alpha, beta, delta, vibc, vibb)
    )
    pull = alpha * vibc * (s_c - f) + beta * vibb * (s_b - f)
    return f + sign * pull + delta * (noise - 0.5)


def female_move(i: int, pop: Population, weights, pf: float, rng: RandomStream) -> np.ndarray:
    """New position of female ``i`` (draws r_m, alpha, beta, delta, then noise)."""
    if i >= pop.n_female:
        raise ParameterError(f"spider {i} is not female")
    ctx = vibration_context(i, pop, weights)
    r_m, alpha, beta, delta = rng.uniform(4)
    noise = rng.uniform(pop.bounds.dimension)
    new = female_step(
        pop.positions[i],
        pop.positions[ctx.vibc_source_index],
        ctx.vibc,
        pop.positions[ctx.vibb_source_index],
        ctx.vibb,
        r_m < pf,
        alpha,
        beta,
        delta,
        noise,
    )
    return clamp_to_bounds(new, pop.bounds)


def median_male_weight(pop: Population, weights) -> float:
    """Male weight at 1-based rank ceil((N_m + 1) / 2) in decreasing order."""
    male_w = np.sort(np.asarray(weights, dtype=np.float64)[pop.n_female :])[::-1]
    if male_w.size == 0:
        raise ParameterError("population has no males")
    return float(male_w[male_w.size // 2])


def classify_males(pop: Population, weights) -> tuple[np.ndarray, np.ndarray]:
    """Population indices of dominant and non-dominant males.

    Dominant means strictly above the median; if nobody is, the first male
    is promoted so that mating remains possible.
    """
    weights = np.asarray(weights, dtype=np.float64)
    median = median_male_weight(pop, weights)
    males = np.arange(pop.n_female, pop.size)
    dominant = weights[males] > median
    if not dominant.any():
        dominant[0] = True
    return males[dominant], males[~dominant]


def male_weighted_mean(males, male_weights) -> np.ndarray:
    """Weight-averaged male position; plain mean when all weights are zero."""
    males = np.asarray(males, dtype=np.float64)
    w = np.asarray(male_weights, dtype=np.float64)
    total = w.sum()
    if total <= 0.0:
        return males.mean(axis=0)
    return w @ males / total


def male_step(m, dominant, s_f, vibf, mean, alpha, delta, noise):
    """Male update before clamping. Broadcasts over leading axes."""
    dominant, alpha, delta, vibf = (
        np.asarray(v)[..., None] if np.ndim(v) else v for v in (dominant, alpha, delta, vibf)
    )
    chase = m + alpha * vibf * (s_f - m) + delta * (noise - 0.5)
    drift = m + alpha * (mean - m)
    return np.where(dominant, chase, drift)


def male_move(i: int, pop: Population, weights, dominance, rng: RandomStream) -> np.ndarray:
    """New position of male ``i``; ``dominance`` is the pair from :func:`classify_males`."""
    if i < pop.n_female:
        raise ParameterError(f"spider {i} is not male")
    weights = np.asarray(weights, dtype=np.float64)
    dominant_set = dominance[0]
    alpha, delta = rng.uniform(2)
    noise = rng.uniform(pop.bounds.dimension)
    m = pop.positions[i]
    f = find_vibf_source(i, pop)
    vibf = vibration(weights[f], np.linalg.norm(pop.positions[f] - m))
    mean = male_weighted_mean(pop.males, weights[pop.n_female :])
    new = male_step(m, i in set(dominant_set.tolist()), pop.positions[f], vibf, mean, alpha, delta, noise)
    return clamp_to_bounds(new, pop.bounds)


# -- mating -------------------------------------------------------------------


def mating_radius(bounds: Bounds) -> float:
    return float(np.sum(bounds.high - bounds.low) / (2 * bounds.dimension))


def roulette_probabilities(member_weights) -> np.ndarray:
    """Weight-proportional selection probabilities; uniform if all weights are 0."""
    w = np.asarray(member_weights, dtype=np.float64)
    total = w.sum()
    if total <= 0.0:
        return np.full(w.size, 1.0 / w.size)
    return w / total


def roulette_select(probabilities, u) -> np.ndarray:
    """Map uniforms ``u`` in [0, 1) to member indices through the cumulative wheel."""
    cum = np.cumsum(probabilities)
    idx = np.searchsorted(cum, u, side="right")
    return np.minimum(idx, len(cum) - 1)


def mate(g: int, pop: Population, weights, r: float, rng: RandomStream) -> Optional[np.ndarray]:
    """Brood of dominant male ``g`` or ``None`` if no female is within ``r``.

    Each coordinate is copied from a member of {females in range} + {g}
    picked independently by roulette over their weights.
    """
    weights = np.asarray(weights, dtype=np.float64)
    d = distance_matrix(pop.positions[g : g + 1], pop.females)[0]
    in_range = np.flatnonzero(d <= r)
    if in_range.size == 0:
        return None
    members = np.append(in_range, g)
    probs = roulette_probabilities(weights[members])
    picks = members[roulette_select(probs, rng.uniform(pop.bounds.dimension))]
    return pop.positions[picks, np.arange(pop.bounds.dimension)].copy()


def brood_weight(f_new: float, best: float, worst: float) -> float:
    """Weight of a brood against frozen colony extremes, clipped to [0, 1]."""
    if worst == best:
        return 1.0
    return float(min(1.0, max(0.0, (worst - f_new) / (worst - best))))


def survive_replace(pop: Population, weights, s_new, f_new: float, extremes=None) -> Optional[int]:
    """Replace the lightest spider by the brood when the brood is strictly better.

    Mutates ``pop`` and ``weights`` in place and returns the replaced index
    (the brood inherits that slot's gender) or ``None``. ``extremes`` is the
    frozen ``(best, worst)`` fitness pair used to weigh the brood; it
    defaults to the current population's extremes.
    """
    worst_idx = int(np.argmin(weights))
    if not f_new < pop.fitness[worst_idx]:
        return None
    if extremes is None:
        extremes = (float(np.min(pop.fitness)), float(np.max(pop.fitness)))
    pop.positions[worst_idx] = s_new
    pop.fitness[worst_idx] = f_new
    weights[worst_idx] = brood_weight(f_new, *extremes)
    return worst_idx


# -- main loop ----------------------------------------------------------------


def _evaluate(spec, xs, rng):
    return spec.batch(xs, rng)


def run(spec: ObjectiveSpec, params: SsoParams, callback=None) -> RunRecord:
    """Minimize ``spec`` with SSO; deterministic for a given ``params.seed``.

    ``callback(iteration, population)``, if given, is called after every
    iteration with the live population (do not modify it).
    """
    streams = spawn_streams(params.seed, STREAMS)
    init, ops, noise_rng = (streams[k] for k in STREAMS)
    bounds = spec.bounds
    n = bounds.dimension

    nf, nm = split_population(params.population_size, init)
    pop = initialize_population(spec, nf, nm, init)
    pop.fitness = _evaluate(spec, pop.positions, noise_rng)
    evaluations = pop.size

    best_i = int(np.argmin(pop.fitness))
    best_x, best_f = pop.positions[best_i].copy(), float(pop.fitness[best_i])
    radius = mating_radius(bounds)
    # "diagonal" feeds the vibration kernel distances measured in units of the
    # box diagonal; mating and nearest-neighbour choices always use raw distances
    kernel_scale = 1.0 if params.distance_scale == "raw" else float(np.linalg.norm(bounds.width))
    trace = []

    for iteration in range(1, params.max_iterations + 1):
        # weights of the start-of-iteration colony
        weights = assign_weights(pop, pop.fitness)
        pop.weights = weights
        pos = pop.positions
        dist = distance_matrix(pos)
        kdist = dist / kernel_scale
        new_pos = np.empty_like(pos)

        # females
        src_c = _nearest_heavier(dist, weights)
        src_b = int(np.argmax(weights))
        fem = np.arange(nf)
        vibc = vibration(weights[src_c[fem]], kdist[fem, src_c[fem]])
        vibb = vibration(weights[src_b], kdist[fem, src_b])
        r_m = ops.uniform(nf)
        alpha, beta, delta = ops.uniform((3, nf))
        noise = ops.uniform((nf, n))
        new_pos[:nf] = female_step(
            pos[:nf], pos[src_c[fem]], vibc, pos[src_b], vibb, r_m < params.pf, alpha, beta, delta, noise
        )

        # males
        dominant_idx, _ = classify_males(pop, weights)
        is_dom = np.zeros(nm, dtype=bool)
        is_dom[dominant_idx - nf] = True
        male_rows = np.arange(nf, nf + nm)
        src_f = np.argmin(dist[male_rows, :nf], axis=1)
        vibf = vibration(weights[src_f], kdist[male_rows, src_f])
        mean = male_weighted_mean(pos[nf:], weights[nf:])
        alpha, delta = ops.uniform((2, nm))
        noise = ops.uniform((nm, n))
        new_pos[nf:] = male_step(pos[nf:], is_dom, pos[src_f], vibf, mean, alpha, delta, noise)

        pop.positions = clamp_to_bounds(new_pos, bounds)
        pop.fitness = _evaluate(spec, pop.positions, noise_rng)
        evaluations += pop.size
        i = int(np.argmin(pop.fitness))
        if pop.fitness[i] < best_f:
            best_x, best_f = pop.positions[i].copy(), float(pop.fitness[i])

        # mating, dominant males in ascending index, extremes frozen
        weights = assign_weights(pop, pop.fitness)
        extremes = (float(pop.fitness.min()), float(pop.fitness.max()))
        for g in dominant_idx:
            brood = mate(int(g), pop, weights, radius, ops)
            if brood is None:
                continue
            brood = clamp_to_bounds(brood, bounds)
            f_new = float(_evaluate(spec, brood[None, :], noise_rng)[0])
            evaluations += 1
            if f_new < best_f:
                best_x, best_f = brood.copy(), f_new
            survive_replace(pop, weights, brood, f_new, extremes)
        pop.weights = weights
        trace.append(best_f)
        if callback is not None:
            callback(iteration, pop)

    if not trace:
        trace.append(best_f)
    return RunRecord(
        best_position=best_x,
        best_fitness=best_f,
        best_so_far_trace=np.asarray(trace, dtype=np.float64),
        evaluations=evaluations,
        algorithm="sso",
        iterations=params.max_iterations,
        extras={"n_female": nf, "n_male": nm},
    )
