import pytest

from handlebody_inv.census import enumerate_models
from handlebody_inv.model import AXIAL, INVERTED, ModelBuilder


@pytest.fixture(scope="session")
def census5():
    return list(enumerate_models(5))


@pytest.fixture(scope="session")
def census6():
    return list(enumerate_models(6))


def axial_loop_model():
    b = ModelBuilder()
    b.fixed_vertex("v")
    b.self_edge("v", "v", AXIAL, name="e")
    return b.build()


def inverted_loop_model():
    b = ModelBuilder()
    b.fixed_vertex("v")
    b.self_edge("v", "v", INVERTED, name="e")
    return b.build()


def bouquet_inverted(k):
    b = ModelBuilder()
    b.fixed_vertex("v")
    for i in range(k):
        b.self_edge("v", "v", INVERTED, name=f"r{i}")
    return b.build()


def antipodal_cycle(length):
    """Cycle 0..length-1 with the rotation i -> i + length/2."""
    half = length // 2
    b = ModelBuilder()
    for i in range(half):
        b.vertex_pair(f"c{i}", f"c{i + half}")
    for i in range(half):
        b.moved_pair(f"c{i}", f"c{(i + 1) % length}", names=(f"k{i}", f"k{i + half}"))
    return b.build()


def inverted_edge_model():
    b = ModelBuilder()
    b.vertex_pair("a", "b")
    b.self_edge("a", "b", INVERTED, name="e")
    return b.build()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
