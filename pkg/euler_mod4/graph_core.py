"""
Graph Core

Finite simple undirected graphs on dense integer nodes 0..p-1, the basic
predicates every other module relies on (connectivity, bipartiteness,
Eulerianness), Euler circuits, and the edge-list / DOT formats.

A (p,q)-graph has p nodes (``order``) and q edges (``size``). Edges are stored
canonically as pairs (u, v) with u < v, so equality and serialization are
deterministic. Graph values are immutable and safe to share between threads
and processes.

Example:
    >>> g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    >>> degree_sequence(g)
    [2, 2, 2]
    >>> is_eulerian(g)
    True
    >>> euler_circuit(g).nodes
    (0, 1, 2, 0)
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from .errors import (
    DuplicateEdgeError,
    GraphFormatError,
    LabelingMismatchError,
    LoopEdgeError,
    NodeRangeError,
    NotEulerianError,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


# ============================================================================
# Domain Types
# ============================================================================


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple undirected graph.

    Attributes:
        order: Number of nodes p; nodes are 0..order-1
        edges: Canonical edge set, each pair stored as (u, v) with u < v
        adjacency: Sorted neighbor tuple per node (derived, not compared)
    """

    order: int
    edges: FrozenSet[Edge]
    adjacency: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise NodeRangeError(f"order must be >= 1, got {self.order}")
        neighbors: List[List[int]] = [[] for _ in range(self.order)]
        for u, v in self.edges:
            if u == v:
                raise LoopEdgeError(f"loop edge ({u},{u})")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise NodeRangeError(f"edge ({u},{v}) outside [0, {self.order})")
            if u > v:
                raise ValueError(f"edge ({u},{v}) is not canonical (u < v)")
            neighbors[u].append(v)
            neighbors[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(n)) for n in neighbors))

    @property
    def size(self) -> int:
        """Number of edges q."""
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def edge_list(self) -> List[Edge]:
        """Edges in sorted order."""
        return sorted(self.edges)

    def complement(self) -> "Graph":
        missing = [
            (u, v)
            for u in range(self.order)
            for v in range(u + 1, self.order)
            if (u, v) not in self.edges
        ]
        return Graph(self.order, frozenset(missing))

    def relabel(self, mapping: Sequence[int]) -> "Graph":
        """Graph with node u renamed to mapping[u] (mapping must be a permutation)."""
        return build_graph(self.order, [(mapping[u], mapping[v]) for u, v in self.edges])

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.order))
        nx_graph.add_edges_from(self.edges)
        return nx_graph


@dataclass(frozen=True)
class Circuit:
    """
    Closed walk given as a node sequence with first == last.

    Attributes:
        nodes: Node ids; consecutive pairs are adjacent in the host graph
    """

    nodes: Tuple[int, ...]

    @property
    def length(self) -> int:
        return max(0, len(self.nodes) - 1)

    def edges(self) -> List[Edge]:
        return [(min(a, b), max(a, b)) for a, b in zip(self.nodes, self.nodes[1:])]


# ============================================================================
# Construction
# ============================================================================


def build_graph(order: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    """
    Validate an edge list and build a Graph.

    Args:
        order: Number of nodes (>= 1)
        edges: Node pairs, in any orientation

    Returns:
        Graph: The validated graph

    Raises:
        LoopEdgeError: A pair (u, u) was given
        NodeRangeError: An endpoint lies outside [0, order)
        DuplicateEdgeError: The same unordered pair appears twice

    Example:
        >>> build_graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)]).size
        10
    """
    if order < 1:
        raise NodeRangeError(f"order must be >= 1, got {order}")

    canonical = set()
    for u, v in edges:
        if u == v:
            raise LoopEdgeError(f"loop edge ({u},{v}) is not allowed")
        if not (0 <= u < order and 0 <= v < order):
            raise NodeRangeError(f"edge ({u},{v}) has an endpoint outside [0, {order})")
        pair = (u, v) if u < v else (v, u)
        if pair in canonical:
            raise DuplicateEdgeError(f"edge ({pair[0]},{pair[1]}) given more than once")
        canonical.add(pair)

    return Graph(order, frozenset(canonical))


def with_extra(graph: Graph, new_nodes: int, new_edges: Iterable[Tuple[int, int]]) -> Graph:
    """Graph plus ``new_nodes`` fresh nodes (ids appended) and extra edges."""
    return build_graph(graph.order + new_nodes, list(graph.edges) + list(new_edges))


# ============================================================================
# Predicates
# ============================================================================


def degree_sequence(graph: Graph) -> List[int]:
    """Entry i is the degree of node i; the entries sum to 2q."""
    return [len(neighbors) for neighbors in graph.adjacency]


def _reachable(graph: Graph, start: int) -> List[bool]:
    seen = [False] * graph.order
    seen[start] = True
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in graph.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return seen


def is_connected(graph: Graph) -> bool:
    """True iff every node is reachable from node 0."""
    return all(_reachable(graph, 0))


def components(graph: Graph) -> List[List[int]]:
    """Node sets of the connected components, each sorted, ordered by smallest node."""
    label = [-1] * graph.order
    result: List[List[int]] = []
    for start in range(graph.order):
        if label[start] >= 0:
            continue
        members = [start]
        label[start] = len(result)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in graph.adjacency[u]:
                if label[w] < 0:
                    label[w] = len(result)
                    members.append(w)
                    queue.append(w)
        result.append(sorted(members))
    return result


def is_eulerian(graph: Graph) -> bool:
    """
    Euler characterization: connected and every node of even degree.

    Example:
        >>> is_eulerian(build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)]))
        False
    """
    return is_connected(graph) and all(len(n) % 2 == 0 for n in graph.adjacency)


def two_coloring(graph: Graph) -> Optional[List[int]]:
    """A proper 2-coloring (0/1 per node), or None when an odd cycle exists."""
    color = [-1] * graph.order
    for start in range(graph.order):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in graph.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(graph: Graph) -> bool:
    return two_coloring(graph) is not None


def is_cycle_graph(graph: Graph) -> bool:
    """Connected and 2-regular, i.e. C_n."""
    return graph.order >= 3 and is_connected(graph) and all(
        len(n) == 2 for n in graph.adjacency
    )


# ============================================================================
# Euler Circuits
# ============================================================================


def closed_trails(order: int, edges: Iterable[Edge]) -> List[Tuple[int, ...]]:
    """
    Cover an even-degree edge set by closed trails, one per nontrivial component.

    Splice-of-subtours: start at the smallest node with unused edges, follow
    unused edges until stuck, then back up splicing detours into the walk.

    Args:
        order: Number of nodes
        edges: Canonical edges; every node must have even degree in this set

    Returns:
        List of closed node sequences (first == last) that together use every
        edge exactly once

    Raises:
        NotEulerianError: Some node has odd degree
    """
    incident: List[List[Tuple[int, int]]] = [[] for _ in range(order)]
    edge_list = sorted(edges)
    for index, (u, v) in enumerate(edge_list):
        incident[u].append((v, index))
        incident[v].append((u, index))

    odd = [u for u in range(order) if len(incident[u]) % 2]
    if odd:
        raise NotEulerianError(f"nodes of odd degree: {odd}")

    for lst in incident:
        lst.sort()
    used = [False] * len(edge_list)
    pointer = [0] * order
    trails: List[Tuple[int, ...]] = []

    for start in range(order):
        if pointer[start] >= len(incident[start]) or all(
            used[i] for _, i in incident[start][pointer[start]:]
        ):
            continue
        stack = [start]
        walk: List[int] = []
        while stack:
            u = stack[-1]
            while pointer[u] < len(incident[u]) and used[incident[u][pointer[u]][1]]:
                pointer[u] += 1
            if pointer[u] == len(incident[u]):
                walk.append(stack.pop())
            else:
                w, index = incident[u][pointer[u]]
                used[index] = True
                stack.append(w)
        walk.reverse()
        trails.append(tuple(walk))

    return trails


def euler_circuit(graph: Graph) -> Circuit:
    """
    Construct an Euler circuit.

    Args:
        graph: An Euler graph

    Returns:
        Circuit: Closed walk of q+1 nodes using every edge exactly once

    Raises:
        NotEulerianError: The graph is disconnected or has a node of odd degree

    Example:
        >>> euler_circuit(build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])).length
        4
    """
    if not is_eulerian(graph):
        raise NotEulerianError("graph is not Eulerian (needs connectivity and even degrees)")
    if graph.size == 0:
        return Circuit((0,))
    trails = closed_trails(graph.order, graph.edges)
    return Circuit(trails[0])


# ============================================================================
# Edge-list Text Format
# ============================================================================


def _decimal(token: str) -> int:
    # ASCII decimal digits only
    if not (token.isascii() and token.isdigit()):
        raise ValueError(token)
    return int(token)


def parse_graph(text: str) -> Graph:
    """
    Parse the edge-list format: header "p q" then q lines "u v" (0-indexed).

    Blank lines are ignored.

    Raises:
        GraphFormatError: Malformed header, non-integer token or edge-count mismatch
        GraphError: Invariant violations reported by build_graph
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise GraphFormatError("empty input: expected header 'p q'")

    header = lines[0].split()
    if len(header) != 2:
        raise GraphFormatError(f"malformed header {lines[0]!r}: expected 'p q'")
    try:
        order, size = _decimal(header[0]), _decimal(header[1])
    except ValueError:
        raise GraphFormatError(f"malformed header {lines[0]!r}: expected two non-negative integers")
    if order < 1 or size < 0:
        raise GraphFormatError(f"malformed header {lines[0]!r}: need p >= 1 and q >= 0")

    body = lines[1:]
    if len(body) != size:
        raise GraphFormatError(f"edge-count mismatch: header says {size}, found {len(body)} lines")

    pairs = []
    for number, line in enumerate(body, start=2):
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"line {number}: expected 'u v', got {line!r}")
        try:
            pairs.append((_decimal(tokens[0]), _decimal(tokens[1])))
        except ValueError:
            raise GraphFormatError(f"line {number}: non-integer node id in {line!r}")

    return build_graph(order, pairs)


def serialize_graph(graph: Graph) -> str:
    lines = [f"{graph.order} {graph.size}"]
    lines.extend(f"{u} {v}" for u, v in graph.edge_list())
    return "\n".join(lines) + "\n"


# ============================================================================
# DOT Export
# ============================================================================


def export_dot(graph: Graph, labeling: Optional[Mapping[int, int]] = None) -> str:
    """
    Render the graph in the DOT language.

    With a labeling (a node -> value mapping, or any object exposing
    ``node_labels``), nodes show their values and edges show the induced
    absolute differences.

    Raises:
        LabelingMismatchError: The labeling names a node that is not in the graph
    """
    labels: Optional[Mapping[int, int]] = getattr(labeling, "node_labels", labeling)
    if labels is not None:
        foreign = sorted(u for u in labels if not (0 <= int(u) < graph.order))
        if foreign:
            raise LabelingMismatchError(f"labeling references nodes not in graph: {foreign}")
        labels = {int(u): int(value) for u, value in labels.items()}

    lines = ["graph {"]
    for u in range(graph.order):
        if labels is not None and u in labels:
            lines.append(f'  {u} [label="{labels[u]}"];')
        else:
            lines.append(f"  {u};")
    for u, v in graph.edge_list():
        if labels is not None and u in labels and v in labels:
            lines.append(f'  {u} -- {v} [label="{abs(labels[u] - labels[v])}"];')
        else:
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"

