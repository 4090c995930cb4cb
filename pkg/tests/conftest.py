from fractions import Fraction

import pytest
from support import RESULTS

from capkit.capacity import Capacity, ProbabilityMeasure
from capkit.setalg import GroundSet

F = Fraction


@pytest.fixture
def g2():
    return GroundSet.of_size(2)


@pytest.fixture
def g3():
    return GroundSet.of_size(3)


@pytest.fixture
def seventenths(g2):
    """n=2 capacity with both singletons at 7/10."""
    return Capacity(g2, [0, F(7, 10), F(7, 10), 1])


@pytest.fixture
def unanimity2(g2):
    return Capacity(g2, [0, 0, 0, 1])


@pytest.fixture
def uniform2(g2):
    return ProbabilityMeasure.from_weights(g2, [F(1, 2), F(1, 2)])


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
