"""
Pytest configuration and fixtures
"""

import pytest

from euler_mod4.config import EulerMod4Config, create_default_config
from euler_mod4.families import complete_graph, cycle_graph
from euler_mod4.graph_core import Graph, build_graph


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')")


@pytest.fixture
def config() -> EulerMod4Config:
    """Default configuration."""
    return create_default_config()


@pytest.fixture
def k5() -> Graph:
    return complete_graph(5)


@pytest.fixture
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)


@pytest.fixture
def bowtie() -> Graph:
    """Two triangles sharing node 2."""
    return build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph as an edge-list file and return its path."""
    from euler_mod4.graph_core import serialize_graph

    def write(graph: Graph, name: str = "graph.txt"):
        path = tmp_path / name
        path.write_text(serialize_graph(graph), encoding="utf-8")
        return path

    return write


@pytest.fixture(scope="session")
def small_euler_graphs():
    """One representative of every connected Euler graph on 3 to 8 nodes."""
    from euler_mod4.search import enumerate_euler_graphs

    return [graph for n in range(3, 9) for graph in enumerate_euler_graphs(n)]
