import numpy as np
import pytest

from qdnet.graph import WeightedGraph

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def triangle():
    return WeightedGraph.from_edges(2, 3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)])


@pytest.fixture
def star():
    """Centre 0 as the single input, leaves 1..3 as outputs."""
    return WeightedGraph.from_edges(2, 4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)], [0])


@pytest.fixture
def single_edge():
    return WeightedGraph.from_edges(2, 2, [(0, 1, 1)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
