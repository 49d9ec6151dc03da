import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from socialspider.core import (
    Bounds,
    DimensionError,
    Gender,
    ParameterError,
    Population,
    RandomStream,
    clamp_to_bounds,
    euclidean_distance,
    spawn_streams,
)

finite = st.floats(-1e6, 1e6, allow_nan=False)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ((0, 0), (0, 0), 0.0),
        ((0, 0), (3, 4), 5.0),
        ((0.4, 1.0), (0.9, 0.7), math.sqrt(0.34)),
    ],
)
def test_euclidean_distance(a, b, expected):
    assert euclidean_distance(a, b) == pytest.approx(expected, abs=1e-12)
    assert euclidean_distance(b, a) == euclidean_distance(a, b)


def test_table1_distance_value():
    assert euclidean_distance((0.4, 1.0), (0.9, 0.7)) == pytest.approx(0.58310, abs=1e-5)


def test_euclidean_distance_length_mismatch():
    with pytest.raises(DimensionError):
        euclidean_distance((0, 0), (1, 2, 3))


@pytest.mark.parametrize(
    "x, low, high, expected",
    [
        ((0, 0), -1, 1, (0, 0)),
        ((5, -5), -1, 1, (1, -1)),
        ((1.0000001,), 0, 1, (1.0,)),
    ],
)
def test_clamp_to_bounds(x, low, high, expected):
    b = Bounds.uniform(low, high, len(x))
    np.testing.assert_array_equal(clamp_to_bounds(x, b), expected)


def test_clamp_rows():
    b = Bounds.uniform(-1, 1, 2)
    out = clamp_to_bounds([[2, 0], [0, -3]], b)
    np.testing.assert_array_equal(out, [[1, 0], [0, -1]])


@given(arrays(np.float64, 4, elements=finite))
def test_clamp_idempotent(x):
    b = Bounds([-1, 0, -5, 2], [1, 3, 5, 2.5])
    once = clamp_to_bounds(x, b)
    np.testing.assert_array_equal(clamp_to_bounds(once, b), once)
    assert b.contains(once)


@given(
    arrays(np.float64, 5, elements=finite),
    arrays(np.float64, 5, elements=finite),
    arrays(np.float64, 5, elements=finite),
)
def test_triangle_inequality(a, b, c):
    lhs = euclidean_distance(a, c)
    rhs = euclidean_distance(a, b) + euclidean_distance(b, c)
    assert lhs <= rhs + 1e-12 * max(1.0, rhs)


def test_bounds_validation():
    with pytest.raises(DimensionError):
        Bounds([0, 0], [1])
    with pytest.raises(ParameterError):
        Bounds([0, 1], [1, 1])
    b = Bounds.uniform(-5, 5, 3)
    assert b.dimension == 3
    np.testing.assert_array_equal(b.width, [10, 10, 10])


def test_population_layout():
    b = Bounds.uniform(0, 1, 2)
    pop = Population(np.zeros((5, 2)), 3, b)
    assert (pop.size, pop.n_female, pop.n_male) == (5, 3, 2)
    assert [s.gender for s in pop] == [Gender.FEMALE] * 3 + [Gender.MALE] * 2
    with pytest.raises(DimensionError):
        Population(np.zeros((5, 3)), 3, b)


def test_random_stream_reproducible():
    a, b = RandomStream(123), RandomStream(123)
    xa, xb = a.uniform(1_000_000), b.uniform(1_000_000)
    np.testing.assert_array_equal(xa, xb)
    assert xa.min() >= 0.0 and xa.max() < 1.0


def test_spawned_streams_are_independent_and_stable():
    s1 = spawn_streams(7, ["init", "operators"])
    s2 = spawn_streams(7, ["init", "operators"])
    a = s1["init"].uniform(10)
    np.testing.assert_array_equal(a, s2["init"].uniform(10))
    assert not np.array_equal(a, s1["operators"].uniform(10))


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1))
def test_scalar_and_batch_draws_agree(seed):
    a, b = RandomStream(seed), RandomStream(seed)
    np.testing.assert_array_equal(a.uniform(6), [b.uniform() for _ in range(6)])
