"""
Unit tests for the graph core.

Construction invariants, predicates (checked against networkx), Euler
circuits, and the edge-list and DOT formats.
"""

import networkx as nx
import pytest

from euler_mod4.errors import (
    DuplicateEdgeError,
    GraphError,
    GraphFormatError,
    LabelingMismatchError,
    LoopEdgeError,
    NodeRangeError,
    NotEulerianError,
)
from euler_mod4.families import complete_bipartite_graph, complete_graph, cycle_graph, random_graph
from euler_mod4.graph_core import (
    Circuit,
    build_graph,
    closed_trails,
    components,
    degree_sequence,
    euler_circuit,
    export_dot,
    is_bipartite,
    is_connected,
    is_cycle_graph,
    is_eulerian,
    parse_graph,
    serialize_graph,
    two_coloring,
    with_extra,
)

TWO_TRIANGLES = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]


class TestBuildGraph:
    """Tests for build_graph and the Graph value."""

    def test_edges_are_canonical(self):
        """Pairs are stored as (u, v) with u < v."""
        graph = build_graph(3, [(2, 0), (1, 2)])
        assert graph.edges == frozenset({(0, 2), (1, 2)})

    def test_loop_rejected(self):
        with pytest.raises(LoopEdgeError):
            build_graph(3, [(1, 1)])

    def test_duplicate_rejected(self):
        """The same unordered pair twice would be a multi-edge."""
        with pytest.raises(DuplicateEdgeError):
            build_graph(3, [(0, 1), (1, 0)])

    def test_node_range(self):
        with pytest.raises(NodeRangeError):
            build_graph(3, [(0, 3)])
        with pytest.raises(NodeRangeError):
            build_graph(0, [])

    def test_errors_are_value_errors(self):
        """Graph errors are catchable as ValueError."""
        with pytest.raises(ValueError):
            build_graph(2, [(0, 0)])
        assert issubclass(LoopEdgeError, GraphError)

    def test_equality_ignores_input_order(self):
        assert build_graph(3, [(0, 1), (1, 2)]) == build_graph(3, [(2, 1), (1, 0)])

    def test_complement(self):
        """The complement of C4 is a perfect matching."""
        assert cycle_graph(4).complement().edge_list() == [(0, 2), (1, 3)]

    def test_relabel(self):
        graph = build_graph(3, [(0, 1)])
        assert graph.relabel([2, 0, 1]).edge_list() == [(0, 2)]

    def test_with_extra(self):
        """New nodes are appended after existing ids."""
        graph = with_extra(cycle_graph(3), 1, [(0, 3), (1, 3)])
        assert graph.order == 4
        assert graph.size == 5

    def test_to_networkx(self):
        nx_graph = complete_graph(5).to_networkx()
        assert nx_graph.number_of_nodes() == 5
        assert nx_graph.number_of_edges() == 10


class TestPredicates:
    """Tests for connectivity, Eulerian and bipartite predicates."""

    def test_handshaking(self):
        """Degree sums equal twice the size."""
        for seed in range(20):
            graph = random_graph(9, 0.4, seed=seed)
            assert sum(degree_sequence(graph)) == 2 * graph.size

    def test_components(self):
        assert components(build_graph(6, TWO_TRIANGLES)) == [[0, 1, 2], [3, 4, 5]]

    def test_is_connected(self):
        assert is_connected(cycle_graph(6))
        assert not is_connected(build_graph(6, TWO_TRIANGLES))
        assert is_connected(build_graph(1, []))

    def test_is_eulerian(self, c6, k4, k5, bowtie):
        assert is_eulerian(c6)
        assert is_eulerian(k5)
        assert is_eulerian(bowtie)
        assert not is_eulerian(k4)
        assert not is_eulerian(build_graph(6, TWO_TRIANGLES))

    def test_is_eulerian_matches_networkx(self):
        for seed in range(30):
            graph = random_graph(7, 0.5, seed=seed)
            assert is_eulerian(graph) == nx.is_eulerian(graph.to_networkx())

    def test_two_coloring(self):
        coloring = two_coloring(cycle_graph(6))
        assert coloring is not None
        assert all(coloring[u] != coloring[v] for u, v in cycle_graph(6).edges)
        assert two_coloring(cycle_graph(5)) is None

    def test_is_bipartite_matches_networkx(self):
        for seed in range(30):
            graph = random_graph(8, 0.3, seed=seed)
            assert is_bipartite(graph) == nx.is_bipartite(graph.to_networkx())

    def test_complete_bipartite(self):
        assert is_bipartite(complete_bipartite_graph(4, 4))
        assert not is_bipartite(complete_graph(3))

    def test_is_cycle_graph(self, c6, k5, bowtie):
        assert is_cycle_graph(c6)
        assert not is_cycle_graph(k5)
        assert not is_cycle_graph(bowtie)
        assert not is_cycle_graph(build_graph(6, TWO_TRIANGLES))


class TestEulerCircuit:
    """Tests for closed trails and Euler circuits."""

    @pytest.mark.parametrize("order", [3, 5, 7])
    def test_complete_graph_circuit(self, order):
        """Every edge is used exactly once and the walk is closed."""
        graph = complete_graph(order)
        circuit = euler_circuit(graph)

        assert circuit.nodes[0] == circuit.nodes[-1]
        assert circuit.length == graph.size
        assert sorted(circuit.edges()) == graph.edge_list()

    def test_bowtie_circuit(self, bowtie):
        circuit = euler_circuit(bowtie)
        assert sorted(circuit.edges()) == bowtie.edge_list()

    def test_not_eulerian(self, k4):
        with pytest.raises(NotEulerianError):
            euler_circuit(k4)

    def test_disconnected_not_eulerian(self):
        with pytest.raises(NotEulerianError):
            euler_circuit(build_graph(6, TWO_TRIANGLES))

    def test_single_node(self):
        assert euler_circuit(build_graph(1, [])) == Circuit((0,))

    def test_circuit_exists_exactly_for_euler_graphs(self):
        for seed in range(60):
            graph = random_graph(6, 0.6, seed=seed)
            try:
                circuit = euler_circuit(graph)
            except NotEulerianError:
                circuit = None
            assert (circuit is not None) == is_eulerian(graph) == nx.is_eulerian(graph.to_networkx())
            if circuit is not None:
                assert sorted(circuit.edges()) == graph.edge_list()

    def test_every_small_euler_graph_has_circuit(self, small_euler_graphs):
        for graph in small_euler_graphs:
            circuit = euler_circuit(graph)
            assert circuit.nodes[0] == circuit.nodes[-1]
            assert sorted(circuit.edges()) == graph.edge_list()

    def test_closed_trails_per_component(self):
        """One closed trail per nontrivial component."""
        trails = closed_trails(6, TWO_TRIANGLES)
        assert len(trails) == 2
        assert all(trail[0] == trail[-1] and len(trail) == 4 for trail in trails)

    def test_closed_trails_odd_degree(self):
        with pytest.raises(NotEulerianError):
            closed_trails(3, [(0, 1), (1, 2)])


class TestEdgeListFormat:
    """Tests for parse_graph and serialize_graph."""

    def test_parse(self):
        graph = parse_graph("3 3\n0 1\n1 2\n2 0\n")
        assert graph == cycle_graph(3)

    def test_blank_lines_ignored(self):
        assert parse_graph("\n3 2\n\n0 1\n1 2\n\n").size == 2

    def test_serialize(self):
        assert serialize_graph(cycle_graph(3)) == "3 3\n0 1\n0 2\n1 2\n"

    def test_roundtrip(self, k5, bowtie):
        for graph in (k5, bowtie, build_graph(4, [])):
            assert parse_graph(serialize_graph(graph)) == graph

    def test_roundtrip_random(self):
        for seed in range(50):
            graph = random_graph(1 + seed % 12, 0.35, seed=seed)
            assert parse_graph(serialize_graph(graph)) == graph

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3\n",
            "a b\n",
            "0 0\n",
            "3 2\n0 1\n",
            "2 1\n0 x\n",
            "3 1\n0 1 2\n",
            "3 3\n0 1\n1 2\n\uff12 0\n",
            "3 1\n0_0 1\n",
            "3 1\n+0 1\n",
            "-3 1\n0 1\n",
        ],
    )
    def test_format_errors(self, text):
        with pytest.raises(GraphFormatError):
            parse_graph(text)

    def test_invariant_errors_pass_through(self):
        with pytest.raises(LoopEdgeError):
            parse_graph("3 1\n0 0\n")
        with pytest.raises(DuplicateEdgeError):
            parse_graph("3 2\n0 1\n1 0\n")
        with pytest.raises(NodeRangeError):
            parse_graph("2 1\n0 5\n")


class TestExportDot:
    """Tests for DOT rendering."""

    def test_plain(self):
        assert export_dot(build_graph(2, [(0, 1)])) == "graph {\n  0;\n  1;\n  0 -- 1;\n}\n"

    def test_isolated_nodes_listed(self):
        assert export_dot(build_graph(3, [(0, 1)])).splitlines() == [
            "graph {",
            "  0;",
            "  1;",
            "  2;",
            "  0 -- 1;",
            "}",
        ]

    def test_with_labels(self):
        dot = export_dot(cycle_graph(3), {0: 0, 1: 1, 2: 3})
        assert dot.splitlines() == [
            "graph {",
            '  0 [label="0"];',
            '  1 [label="1"];',
            '  2 [label="3"];',
            '  0 -- 1 [label="1"];',
            '  0 -- 2 [label="3"];',
            '  1 -- 2 [label="2"];',
            "}",
        ]

    def test_foreign_node(self):
        with pytest.raises(LabelingMismatchError):
            export_dot(cycle_graph(3), {0: 0, 5: 1})
