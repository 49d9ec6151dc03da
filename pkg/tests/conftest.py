import numpy as np
import pytest

from socialspider.core import Bounds, Population

# Worked 2-D colony: five females then three males.
COLONY_POSITIONS = np.array(
    [
        [-1.9, 0.3],
        [1.4, 1.1],
        [1.5, 0.2],
        [0.4, 1.0],
        [1.0, -1.5],
        [-1.3, -1.9],
        [0.9, 0.7],
        [0.8, -2.6],
    ]
)
COLONY_WEIGHTS = np.array([0.00, 0.57, 0.42, 1.00, 0.78, 0.28, 0.57, 0.42])


class StubStream:
    """RandomStream stand-in that replays a fixed list of uniforms."""

    def __init__(self, values):
        self.values = list(values)

    def uniform(self, size=None):
        if size is None:
            return self.values.pop(0)
        n = int(np.prod(size))
        out = np.array([self.values.pop(0) for _ in range(n)], dtype=float)
        return out.reshape(size)


class ZeroStream(StubStream):
    def __init__(self):
        super().__init__([])

    def uniform(self, size=None):
        return 0.0 if size is None else np.zeros(size)


@pytest.fixture
def colony():
    # bounds chosen to contain every member; mating radius (4 + 4.5) / 4 = 2.125
    # puts f2, f3, f4 inside m2's range and f1, f5 outside
    bounds = Bounds([-2.0, -3.0], [2.0, 1.5])
    pop = Population(COLONY_POSITIONS.copy(), 5, bounds)
    # fitness = 1 - w reproduces these weights under min-max scaling
    pop.fitness = 1.0 - COLONY_WEIGHTS
    pop.weights = COLONY_WEIGHTS.copy()
    return pop


_report = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _report


def pytest_terminal_summary(terminalreporter):
    if _report:
        terminalreporter.section("acceptance criteria")
        for line in _report:
            terminalreporter.write_line(line)
