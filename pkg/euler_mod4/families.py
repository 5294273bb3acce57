"""
Graph Families

Constructors for the infinite families used throughout the toolkit: cycle
graphs, chains of cycle blocks, hypercubes, complete and complete bipartite
graphs, theta graphs, random graphs, the G(t,s) family with its grid layout,
and handle attachments with class-preservation checks.

Every constructor is pure and returns a fresh immutable Graph. New nodes
always receive ids appended after the existing ones, so node identity is
deterministic.

Example:
    >>> layout = gts(GtsParams(t=4, s=3))
    >>> (layout.graph.order, layout.graph.size)
    (32, 48)
    >>> layout.rows, layout.cols
    (8, 4)
"""

import logging
import random
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cycles import DEFAULT_CAP, RESIDUES, cycle_type_profile
from .errors import DuplicateEdgeError, NodeRangeError, ParameterError, ScaleGuardError, TruncatedEnumerationError
from .graph_core import Edge, Graph, build_graph, is_eulerian, with_extra
from .reports import LayoutDocument, MembershipReport

logger = logging.getLogger(__name__)

MAX_HYPERCUBE_DIMENSION = 10

# Generator names exposed by the CLI, with their parameters.
FAMILIES: Dict[str, str] = {
    "cycle": "C_n: --n N (N >= 3)",
    "blocks": "chain of cycle blocks sharing cut nodes: --lengths L1,L2,...",
    "hypercube": "Q_n: --n N (1 <= N <= 10)",
    "gts": "G(t,s) from C_4t and 2t copies of K(2,s): --t T --s S",
    "handle": "host plus a handle bundle: --in FILE --u U --v V --len M --count K",
    "complete": "K_n: --n N",
    "bipartite": "K_{a,b}: --a A --b B",
    "theta": "three internally disjoint u-v paths: --lengths A,B,C",
    "random": "Erdos-Renyi G(n,p): --n N --p P (seeded by --seed)",
}


# ============================================================================
# Basic Families
# ============================================================================


def cycle_graph(n: int) -> Graph:
    """
    Cycle graph C_n on nodes 0..n-1.

    Raises:
        ParameterError: n < 3

    Example:
        >>> cycle_graph(5).edge_list()
        [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    """
    if n < 3:
        raise ParameterError(f"cycle length must be >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def block_cycle_graph(lengths: Sequence[int]) -> Graph:
    """
    Chain of cycle blocks, consecutive blocks sharing exactly one cut node.

    The first block occupies nodes 0..n1-1. Each further block is glued at the
    node halfway round the previous block, so no node lies in more than two
    blocks and every degree is 2 or 4.

    Args:
        lengths: Block lengths, each >= 3

    Raises:
        ParameterError: Empty list or a length below 3
    """
    if not lengths:
        raise ParameterError("block_cycle_graph needs at least one block")
    bad = [n for n in lengths if n < 3]
    if bad:
        raise ParameterError(f"block lengths must be >= 3, got {bad}")

    edges: List[Edge] = []
    next_id = 0
    cut: Optional[int] = None
    for n in lengths:
        if cut is None:
            block = list(range(n))
            next_id = n
        else:
            block = [cut] + list(range(next_id, next_id + n - 1))
            next_id += n - 1
        edges.extend((block[i], block[(i + 1) % n]) for i in range(n))
        cut = block[n // 2]

    graph = build_graph(next_id, edges)
    logger.debug(f"Block-cycle graph {list(lengths)}: order={graph.order}, size={graph.size}")
    return graph


def hypercube(n: int) -> Graph:
    """
    n-dimensional hypercube: nodes 0..2^n-1, adjacent iff their ids differ in one bit.

    Raises:
        ParameterError: n < 1
        ScaleGuardError: n > 10
    """
    if n < 1:
        raise ParameterError(f"hypercube dimension must be >= 1, got {n}")
    if n > MAX_HYPERCUBE_DIMENSION:
        raise ScaleGuardError(
            f"hypercube dimension {n} exceeds desk-scale guard {MAX_HYPERCUBE_DIMENSION}"
        )
    order = 1 << n
    edges = [(u, u | (1 << b)) for u in range(order) for b in range(n) if not u & (1 << b)]
    return build_graph(order, edges)


def complete_graph(n: int) -> Graph:
    """K_n; Eulerian exactly when n is odd."""
    if n < 1:
        raise ParameterError(f"complete graph order must be >= 1, got {n}")
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """K_{a,b} with parts 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise ParameterError(f"part sizes must be >= 1, got ({a}, {b})")
    return build_graph(a + b, [(u, a + w) for u in range(a) for w in range(b)])


def theta_graph(a: int, b: int, c: int) -> Graph:
    """
    Three internally disjoint paths of lengths a, b, c between nodes 0 and 1.

    Interior nodes are numbered path by path starting at 2, so the first edge
    of the first path is (0, 2), or (0, 1) when a == 1. Its cycles have
    lengths a+b, a+c and b+c.

    Raises:
        ParameterError: A length below 1
        DuplicateEdgeError: More than one path of length 1
    """
    lengths = (a, b, c)
    if min(lengths) < 1:
        raise ParameterError(f"path lengths must be >= 1, got {lengths}")
    if lengths.count(1) > 1:
        raise DuplicateEdgeError("two paths of length 1 would duplicate the edge (0,1)")

    edges: List[Edge] = []
    next_id = 2
    for length in lengths:
        interior = list(range(next_id, next_id + length - 1))
        next_id += length - 1
        walk = [0] + interior + [1]
        edges.extend(zip(walk, walk[1:]))
    return build_graph(next_id, edges)


def random_graph(order: int, probability: float, seed: Optional[int] = None) -> Graph:
    """
    Erdos-Renyi G(n, p) graph drawn from a private random.Random(seed).

    Raises:
        ParameterError: order < 1 or probability outside [0, 1]
    """
    if order < 1:
        raise ParameterError(f"order must be >= 1, got {order}")
    if not 0.0 <= probability <= 1.0:
        raise ParameterError(f"probability must lie in [0, 1], got {probability}")

    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(order)
        for v in range(u + 1, order)
        if rng.random() < probability
    ]
    return build_graph(order, edges)


# ============================================================================
# G(t,s)
# ============================================================================


@dataclass(frozen=True)
class GtsParams:
    """
    Parameters of G(t,s).

    Attributes:
        t: Half the number of K(2,s) blocks; the base cycle is C_4t
        s: Size of the middle part of every K(2,s)
    """

    t: int
    s: int

    def __post_init__(self) -> None:
        if self.t < 1 or self.s < 1:
            raise ParameterError(f"G(t,s) needs t >= 1 and s >= 1, got t={self.t}, s={self.s}")

    @property
    def order(self) -> int:
        return 2 * self.t * (self.s + 1)

    @property
    def size(self) -> int:
        return 4 * self.t * self.s


@dataclass(frozen=True)
class GtsLayout:
    """
    G(t,s) together with its 2t x (s+1) grid.

    Attributes:
        graph: The constructed graph
        params: Construction parameters
        grid: grid[r][0] is the even cycle node u_2r; grid[r][1..s] are the
            middle nodes of row r, adjacent to u_2r and u_2r+2 (mod 4t)
    """

    graph: Graph
    params: GtsParams
    grid: Tuple[Tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def to_document(self) -> LayoutDocument:
        return LayoutDocument(rows=self.rows, cols=self.cols, grid=[list(row) for row in self.grid])


def gts(params: GtsParams) -> GtsLayout:
    """
    Build G(t,s) from C_4t on nodes 0..4t-1.

    Across each consecutive pair of even cycle nodes (u_2r, u_2r+2) sits a
    K(2,s) whose middle part is the odd cycle node u_2r+1 plus s-1 fresh
    nodes. Fresh nodes are numbered from 4t in row order.

    Args:
        params: Validated G(t,s) parameters

    Returns:
        GtsLayout: Graph of order 2t(s+1) and size 4ts, with its grid
    """
    t, s = params.t, params.s
    ring = 4 * t
    edges: List[Edge] = [(i, (i + 1) % ring) for i in range(ring)]
    grid: List[Tuple[int, ...]] = []
    next_id = ring

    for r in range(2 * t):
        left, right = 2 * r, (2 * r + 2) % ring
        fresh = list(range(next_id, next_id + s - 1))
        next_id += s - 1
        for m in fresh:
            edges.append((left, m))
            edges.append((m, right))
        grid.append((left, 2 * r + 1, *fresh))

    graph = build_graph(next_id, edges)
    logger.debug(f"G({t},{s}): order={graph.order}, size={graph.size}")
    return GtsLayout(graph=graph, params=params, grid=tuple(grid))


# ============================================================================
# Handles
# ============================================================================


@dataclass(frozen=True)
class HandleSpec:
    """
    A bundle of ``count`` internally disjoint u-v paths of ``path_length`` edges.

    Attributes:
        u: First end node (existing node of the host)
        v: Second end node (existing node of the host, != u)
        path_length: Edges per path
        count: Number of paths
    """

    u: int
    v: int
    path_length: int
    count: int = 1

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ParameterError(f"handle ends must differ, got u = v = {self.u}")
        if self.path_length < 1:
            raise ParameterError(f"path_length must be >= 1, got {self.path_length}")
        if self.count < 1:
            raise ParameterError(f"count must be >= 1, got {self.count}")


def attach_handle(graph: Graph, spec: HandleSpec) -> Graph:
    """
    Attach ``spec.count`` new u-v paths, interior nodes fresh.

    Only u and v change degree, each by exactly ``spec.count``.

    Raises:
        NodeRangeError: u or v is not a node of the graph
        DuplicateEdgeError: A length-1 handle would duplicate an edge
    """
    missing = [w for w in (spec.u, spec.v) if not 0 <= w < graph.order]
    if missing:
        raise NodeRangeError(f"handle ends {missing} are not nodes of a graph of order {graph.order}")
    if spec.path_length == 1 and (spec.count > 1 or graph.has_edge(spec.u, spec.v)):
        raise DuplicateEdgeError(
            f"a length-1 handle at ({spec.u},{spec.v}) would create a multi-edge"
        )

    interior_per_path = spec.path_length - 1
    new_edges: List[Edge] = []
    for k in range(spec.count):
        start = graph.order + k * interior_per_path
        walk = [spec.u] + list(range(start, start + interior_per_path)) + [spec.v]
        new_edges.extend(zip(walk, walk[1:]))

    result = with_extra(graph, spec.count * interior_per_path, new_edges)
    logger.debug(
        f"Attached {spec.count} path(s) of length {spec.path_length} at ({spec.u},{spec.v}): "
        f"order {graph.order} -> {result.order}"
    )
    return result


def _target_set(target: Iterable[int]) -> frozenset:
    residues = frozenset(target)
    foreign = sorted(r for r in residues if r not in RESIDUES)
    if foreign:
        raise ParameterError(f"target residues must lie in 0..3, got {foreign}")
    return residues


def validate_class_membership(
    graph: Graph, target: Iterable[int], cap: int = DEFAULT_CAP
) -> MembershipReport:
    """
    Check whether a connected graph's cycle-type profile is exactly ``target``.

    A truncated profile is flagged in the report and never counts as a member.

    Raises:
        NotConnectedError: The graph is disconnected
    """
    residues = _target_set(target)
    profile = cycle_type_profile(graph, cap)
    if profile.truncated:
        logger.warning("Membership check ran on a truncated profile; member=False")
    member = not profile.truncated and profile.residues == residues
    return MembershipReport(
        eulerian=is_eulerian(graph),
        profile=profile.to_report(),
        target=sorted(residues),
        member=member,
    )


def repeatability_check(
    graph: Graph, spec: HandleSpec, target: Iterable[int], cap: int = DEFAULT_CAP
) -> bool:
    """
    Whether the handle can be repeated without leaving the target class.

    Builds the host with ``spec.count + 2`` paths (two more keep degree parity)
    and tests profile ⊆ target by full enumeration.

    Raises:
        TruncatedEnumerationError: The enumeration hit the cap
    """
    residues = _target_set(target)
    repeated = attach_handle(graph, replace(spec, count=spec.count + 2))
    profile = cycle_type_profile(repeated, cap)
    if profile.truncated:
        raise TruncatedEnumerationError(f"more than {cap} simple cycles after repeating the handle")
    repeatable = profile.residues <= residues
    logger.debug(f"Handle {spec} repeated: residues={sorted(profile.residues)}, repeatable={repeatable}")
    return repeatable
