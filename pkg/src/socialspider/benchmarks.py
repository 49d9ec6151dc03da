"""The 19-function minimization suite (ids ``f1`` .. ``f19``).

All functions are vectorized over leading axes: ``x`` may be a single
position of shape ``(n,)`` or a stack ``(m, n)``; the result has the
leading shape. Formulas follow the usual literature forms where the
printed table lost absolute values or squares; see each docstring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from .core import Bounds, DimensionError, ObjectiveSpec

__all__ = ["BenchmarkEntry", "penalty_u", "list_functions", "get", "evaluate", "FUNCTION_IDS"]

DIMENSION = 30


def penalty_u(x, a, k, m):
    """Boundary penalty: ``k(x-a)^m`` above ``a``, ``k(-x-a)^m`` below ``-a``, else 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.where(x > a, k * (x - a) ** m, 0.0)
    out = np.where(x < -a, k * (-x - a) ** m, out)
    return out if out.ndim else float(out)


def _index(x):
    return np.arange(1, x.shape[-1] + 1, dtype=np.float64)


def sphere(x):
    return np.sum(x**2, axis=-1)


def schwefel_222(x):
    ax = np.abs(x)
    return np.sum(ax, axis=-1) + np.prod(ax, axis=-1)


def schwefel_12(x):
    return np.sum(np.cumsum(x, axis=-1) ** 2, axis=-1)


def f4(x):
    """Shifted Schwefel sine form. Not zero at the origin (value 418.9829 n there)."""
    n = x.shape[-1]
    return 418.9829 * n - np.sum(x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def rosenbrock(x):
    return np.sum(100.0 * (x[..., 1:] - x[..., :-1] ** 2) ** 2 + (x[..., :-1] - 1.0) ** 2, axis=-1)


def step(x):
    return np.sum(np.floor(x + 0.5) ** 2, axis=-1)


def quartic(x, noise=0.0):
    return np.sum(_index(x) * x**4, axis=-1) + noise


def dixon_price(x):
    # sum runs from i = 2
    i = _index(x)[1:]
    return (x[..., 0] - 1.0) ** 2 + np.sum(i * (2.0 * x[..., 1:] ** 2 - x[..., :-1]) ** 2, axis=-1)


def levy(x):
    """Levy variant with a per-term ``sin^2(3*pi*x_i + 1)``, plus ``u(x, 5, 100, 4)``."""
    xn = x[..., -1]
    inner = (
        np.sin(3 * np.pi * x[..., 0]) ** 2
        + np.sum((x - 1.0) ** 2 * (1.0 + np.sin(3 * np.pi * x + 1.0) ** 2), axis=-1)
        + (xn - 1.0) ** 2 * (1.0 + np.sin(2 * np.pi * xn) ** 2)
    )
    return 0.1 * inner + np.sum(penalty_u(x, 5, 100, 4), axis=-1)


def sum_of_squares(x):
    return np.sum(_index(x) * x**2, axis=-1)


def zakharov(x):
    s = np.sum(0.5 * _index(x) * x, axis=-1)
    return np.sum(x**2, axis=-1) + s**2 + s**4


def penalized(x):
    """Generalized penalized function 1; minimum 0 at ``x = (-1, ..., -1)``."""
    n = x.shape[-1]
    y = 1.0 + (x + 1.0) / 4.0
    inner = (
        10.0 * np.sin(np.pi * y[..., 0]) ** 2
        + np.sum((y[..., :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[..., 1:]) ** 2), axis=-1)
        + (y[..., -1] - 1.0) ** 2
    )
    return np.pi / n * inner + np.sum(penalty_u(x, 10, 100, 4), axis=-1)


def penalized2(x):
    """Generalized penalized function 2; minimum 0 at ``x = (1, ..., 1)``."""
    xn = x[..., -1]
    inner = (
        np.sin(3 * np.pi * x[..., 0]) ** 2
        + np.sum((x[..., :-1] - 1.0) ** 2 * (1.0 + np.sin(3 * np.pi * x[..., 1:]) ** 2), axis=-1)
        + (xn - 1.0) ** 2 * (1.0 + np.sin(2 * np.pi * xn) ** 2)
    )
    return 0.1 * inner + np.sum(penalty_u(x, 5, 100, 4), axis=-1)


def schwefel(x):
    return np.sum(-x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def rastrigin(x):
    return np.sum(x**2 - 10.0 * np.cos(2 * np.pi * x) + 10.0, axis=-1)


def ackley(x):
    n = x.shape[-1]
    return (
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x**2, axis=-1) / n))
        - np.exp(np.sum(np.cos(2 * np.pi * x), axis=-1) / n)
        + 20.0
        + np.e
    )


def griewank(x):
    return np.sum(x**2, axis=-1) / 4000.0 - np.prod(np.cos(x / np.sqrt(_index(x))), axis=-1) + 1.0


def powell(x):
    # floor(n/4) blocks; trailing n mod 4 coordinates do not enter
    k = x.shape[-1] // 4
    b = x[..., : 4 * k].reshape(x.shape[:-1] + (k, 4))
    a, c, d, e = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    terms = (a + 10 * c) ** 2 + 5 * (d - e) ** 2 + (c - d) ** 4 + 10 * (a - e) ** 4
    return np.sum(terms, axis=-1)


def salomon(x):
    r = np.sqrt(np.sum(x**2, axis=-1))
    return -np.cos(2 * np.pi * r) + 0.1 * r + 1.0


def _dixon_price_minimizer(n):
    i = np.arange(1, n + 1, dtype=np.float64)
    return 2.0 ** (-(2.0**i - 2.0) / 2.0**i)


SCHWEFEL_OPTIMUM = 420.9687462275036

# id, name, func, (low, high), optimum value (None = unknown), optimum point builder, testable
_TABLE = [
    ("f1", "Sphere", sphere, (-100, 100), 0.0, lambda n: np.zeros(n), True),
    ("f2", "Schwefel 2.22", schwefel_222, (-10, 10), 0.0, lambda n: np.zeros(n), True),
    ("f3", "Schwefel 1.2", schwefel_12, (-100, 100), 0.0, lambda n: np.zeros(n), True),
    ("f4", "F4", f4, (-100, 100), None, None, False),
    ("f5", "Rosenbrock", rosenbrock, (-30, 30), 0.0, lambda n: np.ones(n), True),
    ("f6", "Step", step, (-100, 100), 0.0, lambda n: np.zeros(n), True),
    ("f7", "Quartic", quartic, (-1.28, 1.28), 0.0, lambda n: np.zeros(n), False),
    ("f8", "Dixon & Price", dixon_price, (-10, 10), 0.0, _dixon_price_minimizer, False),
    ("f9", "Levy", levy, (-10, 10), 0.0, lambda n: np.ones(n), True),
    ("f10", "Sum of Squares", sum_of_squares, (-10, 10), 0.0, lambda n: np.zeros(n), True),
    ("f11", "Zakharov", zakharov, (-5, 10), 0.0, lambda n: np.zeros(n), True),
    ("f12", "Penalized", penalized, (-50, 50), 0.0, lambda n: -np.ones(n), True),
    ("f13", "Penalized 2", penalized2, (-50, 50), 0.0, lambda n: np.ones(n), True),
    ("f14", "Schwefel", schwefel, (-500, 500), None, lambda n: np.full(n, SCHWEFEL_OPTIMUM), False),
    ("f15", "Rastrigin", rastrigin, (-5.12, 5.12), 0.0, lambda n: np.zeros(n), True),
    ("f16", "Ackley", ackley, (-32, 32), 0.0, lambda n: np.zeros(n), True),
    ("f17", "Griewank", griewank, (-600, 600), 0.0, lambda n: np.zeros(n), True),
    ("f18", "Powell", powell, (-4, 5), 0.0, lambda n: np.zeros(n), True),
    ("f19", "Salomon", salomon, (-100, 100), 0.0, lambda n: np.zeros(n), True),
]

FUNCTION_IDS = tuple(row[0] for row in _TABLE)


@dataclass(frozen=True)
class BenchmarkEntry:
    id: str
    name: str
    spec: ObjectiveSpec
    optimum_testable: bool


def _quartic_single(x, rng=None):
    noise = 0.0 if rng is None else float(rng.uniform())
    return float(quartic(x, noise))


def _quartic_batch(xs, rng=None):
    noise = 0.0 if rng is None else rng.uniform(xs.shape[0])
    return quartic(xs, noise)


def _deterministic(func, x, rng=None):
    return func(x)


def _make_entry(row, dimension) -> BenchmarkEntry:
    fid, name, func, (low, high), fopt, xopt, testable = row
    if fid == "f7":
        single, batch = _quartic_single, _quartic_batch
    else:
        single = batch = partial(_deterministic, func)
    if fid == "f14":
        fopt = -418.9829 * dimension
    spec = ObjectiveSpec(
        name=fid,
        bounds=Bounds.uniform(low, high, dimension),
        evaluate=single,
        optimum_value=fopt,
        optimum_point=None if xopt is None else xopt(dimension),
        evaluate_batch=batch,
    )
    return BenchmarkEntry(fid, name, spec, testable)


_ENTRIES = {row[0]: _make_entry(row, DIMENSION) for row in _TABLE}


def list_functions():
    """All 19 entries at n = 30, in id order."""
    return [_ENTRIES[fid] for fid in FUNCTION_IDS]


def get(fid: str, dimension: int = DIMENSION) -> BenchmarkEntry:
    """Look up an entry; other dimensions are built on demand."""
    for row in _TABLE:
        if row[0] == fid:
            if dimension == DIMENSION:
                return _ENTRIES[fid]
            return _make_entry(row, dimension)
    raise KeyError(f"unknown benchmark id {fid!r}; expected one of f1..f19")


def evaluate(fid: str, x, rng=None) -> float:
    """Evaluate ``fid`` at a length-30 vector. ``f7`` draws its noise from ``rng``."""
    entry = get(fid)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (DIMENSION,):
        raise DimensionError(f"{fid} expects a length-{DIMENSION} vector, got shape {x.shape}")
    return entry.spec(x, rng)
