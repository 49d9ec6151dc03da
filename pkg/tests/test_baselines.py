import numpy as np
import pytest

from socialspider import baselines
from socialspider.baselines import AbcParams, PsoParams, abc_fitness, abc_run, inertia, onlooker_probabilities, pso_run
from socialspider.benchmarks import get
from socialspider.core import Bounds, ObjectiveSpec, ParameterError


def sphere(n):
    return ObjectiveSpec("sphere", Bounds.uniform(-5, 5, n), lambda x, rng=None: float(np.sum(np.square(x))))


@pytest.mark.parametrize("t, expected", [(0, 0.9), (999, 0.2), (499.5, 0.55)])
def test_inertia_schedule(t, expected):
    assert inertia(t, 1000) == pytest.approx(expected, abs=1e-12)


def test_pso_stationary_swarm():
    b = Bounds.uniform(-1, 1, 3)
    x = np.full((4, 3), 0.25)
    x2, v2 = baselines.pso_step(x, np.zeros_like(x), x, x[0], 0.7, 2, 2, np.ones_like(x), np.ones_like(x), b)
    np.testing.assert_array_equal(x2, x)
    np.testing.assert_array_equal(v2, 0)


def test_pso_velocity_clamped():
    b = Bounds.uniform(-1, 1, 1)
    x = np.array([[0.0]])
    _, v = baselines.pso_step(x, np.array([[50.0]]), x, x[0], 1.0, 2, 2, np.zeros((1, 1)), np.zeros((1, 1)), b)
    assert v[0, 0] == 2.0


def test_abc_fitness_transform():
    np.testing.assert_allclose(abc_fitness([0.0, 1.0, -2.0]), [1.0, 0.5, 3.0])


def test_onlooker_probabilities_sum():
    p = onlooker_probabilities([0.0, 3.0, -1.0, 1e9])
    assert p.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(p >= 0)


def test_params_validation():
    with pytest.raises(ParameterError):
        PsoParams(population_size=0)
    with pytest.raises(ParameterError):
        AbcParams(colony_size=3)
    with pytest.raises(ParameterError):
        AbcParams(limit=0)


def test_scout_resets_stale_source():
    """A flat objective never improves, so trials pile up until scouts fire."""
    spec = ObjectiveSpec("flat", Bounds.uniform(-1, 1, 2), lambda x, rng=None: 1.0)
    # two sources share four failed trials in the first cycle, so one passes limit = 1
    rec = abc_run(spec, AbcParams(colony_size=4, max_iterations=1, limit=1, seed=0))
    assert rec.evaluations > 2 + 4
    # one employed plus at most two onlooker trials per source cannot exceed limit = 3
    rec = abc_run(spec, AbcParams(colony_size=4, max_iterations=1, limit=3, seed=0))
    assert rec.evaluations == 2 + 4


def test_scout_not_triggered_at_limit():
    spec = ObjectiveSpec("flat", Bounds.uniform(-1, 1, 2), lambda x, rng=None: 1.0)
    # with limit 100 and 5 cycles no source can exceed 100 trials
    rec = abc_run(spec, AbcParams(colony_size=4, max_iterations=5, limit=100, seed=0))
    assert rec.evaluations == 2 + 5 * 4


@pytest.mark.parametrize("runner, params", [(pso_run, PsoParams), (abc_run, AbcParams)])
@pytest.mark.parametrize("fid", ["f1", "f5", "f15"])
def test_monotone_trace_and_determinism(runner, params, fid):
    spec = get(fid, dimension=5).spec
    kw = {"max_iterations": 80, "seed": 4}
    a = runner(spec, params(**kw))
    b = runner(spec, params(**kw))
    assert len(a.best_so_far_trace) == 80
    assert np.all(np.diff(a.best_so_far_trace) <= 0)
    np.testing.assert_array_equal(a.best_so_far_trace, b.best_so_far_trace)
    assert spec.bounds.contains(a.best_position)
    assert spec(a.best_position) == a.best_fitness


def test_pso_pbest_monotone(monkeypatch):
    seen = []
    real = baselines.pso_step

    def spy(x, v, pbest, *rest):
        seen.append(pbest.copy())
        out = real(x, v, pbest, *rest)
        assert spec.bounds.contains(out[0])
        return out

    spec = get("f15", dimension=4).spec
    monkeypatch.setattr(baselines, "pso_step", spy)
    pso_run(spec, PsoParams(population_size=10, max_iterations=40, seed=1))
    pf = np.array([spec.batch(p) for p in seen])
    assert np.all(np.diff(pf, axis=0) <= 0)


def test_abc_greedy_never_worsens(monkeypatch):
    snaps = []
    real = baselines._neighbour_candidates

    def spy(x, targets, ops):
        snaps.append(x.copy())
        return real(x, targets, ops)

    monkeypatch.setattr(baselines, "_neighbour_candidates", spy)
    spec = get("f1", dimension=3).spec
    # large limit: no scout resets, so every source can only improve
    abc_run(spec, AbcParams(colony_size=10, max_iterations=30, limit=10_000, seed=2))
    f = np.array([spec.batch(s) for s in snaps])
    assert np.all(np.diff(f, axis=0) <= 0)


def test_zero_iterations():
    spec = sphere(3)
    for runner, params in ((pso_run, PsoParams), (abc_run, AbcParams)):
        rec = runner(spec, params(max_iterations=0, seed=0))
        assert rec.best_so_far_trace.tolist() == [rec.best_fitness]
        assert rec.iterations == 0


def test_pso_solves_low_dimensional_sphere():
    rec = pso_run(sphere(2), PsoParams(population_size=20, max_iterations=200, seed=0))
    assert rec.best_fitness < 1e-6
