"""
Exhaustive Search

Enumeration of regular graphs and Euler graphs at small orders with isomorph
rejection, and the sweeps that check the regular-Euler-graph theorems, the
three-cycle-type conjecture and the evenness properties against every graph
in range.

Isomorph rejection uses canonical certificates: color refinement of an
ordered partition, individualization of one node of the first non-singleton
cell at a time, and the maximal adjacency bitstring over all leaves. Nodes
that are twins (equal neighborhoods apart from each other) lead to identical
subtrees, so only one of them is individualized.

Graphs are generated node by node. When node i chooses its later neighbors,
the later nodes with identical neighborhoods so far are interchangeable, so
only how many of each such class are chosen matters.

Example:
    >>> [g.size for g in enumerate_regular_graphs(6, 4)]
    [12]
    >>> check_conjecture_three_types(6, 7).verdict
    'consistent with paper'
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from networkx.algorithms.connectivity import local_edge_connectivity as nx_local_edge_connectivity

from .config import EulerMod4Config, create_default_config, resolve_workers
from .cycles import cycle_residues
from .errors import NodeRangeError, ParameterError, ScaleGuardError
from .families import complete_bipartite_graph, complete_graph, hypercube, random_graph
from .graph_core import Graph, build_graph, degree_sequence, is_bipartite, is_connected, is_cycle_graph, serialize_graph
from .reports import TheoremReport

logger = logging.getLogger(__name__)

# Split the generation tree after this many nodes have chosen their neighbors.
PARTITION_DEPTH = 2

STATEMENTS = {
    "pure": "Regular Euler graphs with only one cycle type are cycle graphs",
    "two": "Regular Euler graphs with exactly two cycle types are bipartite of degree > 2, "
    "with cycle types {0, 2}",
    "conjecture": "Regular Euler graphs of order > 5 never have exactly three cycle types",
    "bipartite": "Euler graphs with one cycle type are regular bipartite iff they are even "
    "cycle graphs",
    "composite": "Regular Euler graphs with at most two cycle types are cycle graphs or "
    "bipartite of even degree > 2",
    "evenness": "Degree sums are even, odd-degree nodes come in pairs, and local edge "
    "connectivity in an Euler graph is even",
}


# ============================================================================
# Canonical Form
# ============================================================================


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """
    Isomorphism certificate.

    Attributes:
        order: Number of nodes
        code: Upper-triangle adjacency bits (row-major, first bit most
            significant) of the canonical relabeling
    """

    order: int
    code: int

    def to_graph(self) -> Graph:
        """The canonical representative."""
        total = self.order * (self.order - 1) // 2
        edges = []
        position = total - 1
        for u in range(self.order):
            for v in range(u + 1, self.order):
                if (self.code >> position) & 1:
                    edges.append((u, v))
                position -= 1
        return build_graph(self.order, edges)


def _masks(graph: Graph) -> List[int]:
    return [sum(1 << w for w in neighbors) for neighbors in graph.adjacency]


def _refine(masks: Sequence[int], cells: List[List[int]]) -> List[List[int]]:
    """Split cells by neighbor counts into each splitter cell until stable."""
    while True:
        for splitter in cells:
            splitter_mask = sum(1 << v for v in splitter)
            refined: List[List[int]] = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                buckets: Dict[int, List[int]] = {}
                for v in cell:
                    buckets.setdefault((masks[v] & splitter_mask).bit_count(), []).append(v)
                if len(buckets) == 1:
                    refined.append(cell)
                else:
                    split = True
                    refined.extend(buckets[key] for key in sorted(buckets))
            if split:
                cells = refined
                break
        else:
            return cells


def _leaf_code(masks: Sequence[int], ordering: Sequence[int]) -> int:
    code = 0
    n = len(ordering)
    for i in range(n):
        row = masks[ordering[i]]
        for j in range(i + 1, n):
            code = (code << 1) | ((row >> ordering[j]) & 1)
    return code


def _twins(masks: Sequence[int], u: int, v: int) -> bool:
    return masks[u] & ~(1 << v) == masks[v] & ~(1 << u)


def _best_code(masks: Sequence[int], cells: List[List[int]]) -> int:
    cells = _refine(masks, cells)
    target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
    if target is None:
        return _leaf_code(masks, [cell[0] for cell in cells])

    cell = cells[target]
    representatives: List[int] = []
    for v in cell:
        if not any(_twins(masks, v, w) for w in representatives):
            representatives.append(v)

    best = -1
    for v in representatives:
        rest = [w for w in cell if w != v]
        code = _best_code(masks, cells[:target] + [[v], rest] + cells[target + 1:])
        best = max(best, code)
    return best


def _certificate(order: int, masks: Sequence[int]) -> CanonicalForm:
    return CanonicalForm(order=order, code=_best_code(masks, [list(range(order))]))


def canonical_form(graph: Graph, config: Optional[EulerMod4Config] = None) -> CanonicalForm:
    """
    Certificate equal for two graphs exactly when they are isomorphic.

    Raises:
        ScaleGuardError: Order above search.max_order_canonical

    Example:
        >>> from euler_mod4.families import cycle_graph
        >>> g = cycle_graph(4)
        >>> canonical_form(g) == canonical_form(g.relabel([2, 0, 3, 1]))
        True
    """
    config = config or create_default_config()
    if graph.order > config.search.max_order_canonical:
        raise ScaleGuardError(
            f"canonical form limited to order {config.search.max_order_canonical}, got {graph.order}"
        )
    return _certificate(graph.order, _masks(graph))


# ============================================================================
# Generation
# ============================================================================

# A generation state: (neighbor masks, degrees, next node to process).
_State = Tuple[Tuple[int, ...], Tuple[int, ...], int]


def _distributions(sizes: Sequence[int], totals: FrozenSet[int]) -> Iterator[Tuple[int, ...]]:
    """Per-class counts c_k <= sizes[k] whose sum lies in ``totals``."""
    if not totals:
        return
    ceiling = max(totals)

    def extend(index: int, prefix: Tuple[int, ...], used: int) -> Iterator[Tuple[int, ...]]:
        if index == len(sizes):
            if used in totals:
                yield prefix
            return
        for count in range(min(sizes[index], ceiling - used) + 1):
            yield from extend(index + 1, prefix + (count,), used + count)

    yield from extend(0, (), 0)


def _children(n: int, degree: Optional[int], connected_only: bool, state: _State) -> Iterator[_State]:
    """
    States after node i picks its neighbors among the later nodes.

    ``degree`` is the regular degree, or None for the even-degree policy.
    """
    masks, degrees, i = state
    candidates = [j for j in range(i + 1, n) if degree is None or degrees[j] < degree]

    if degree is None:
        totals = frozenset(r for r in range(len(candidates) + 1) if (degrees[i] + r) % 2 == 0)
    else:
        need = degree - degrees[i]
        if need < 0 or need > len(candidates):
            return
        totals = frozenset([need])

    classes: Dict[int, List[int]] = {}
    for j in candidates:
        classes.setdefault(masks[j], []).append(j)
    groups = list(classes.values())

    for counts in _distributions([len(g) for g in groups], totals):
        chosen = [j for group, count in zip(groups, counts) for j in group[:count]]
        if connected_only and n > 1 and degrees[i] + len(chosen) == 0:
            continue
        new_masks = list(masks)
        new_degrees = list(degrees)
        for j in chosen:
            new_masks[i] |= 1 << j
            new_masks[j] |= 1 << i
            new_degrees[i] += 1
            new_degrees[j] += 1
        if degree is not None and any(
            degree - new_degrees[j] > n - i - 2 for j in range(i + 1, n)
        ):
            continue
        yield tuple(new_masks), tuple(new_degrees), i + 1


def _mask_connected(masks: Sequence[int]) -> bool:
    n = len(masks)
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        for v in range(n):
            if frontier >> v & 1:
                reach |= masks[v]
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << n) - 1


def _codes_from_state(n: int, degree: Optional[int], connected_only: bool, state: _State) -> Set[int]:
    """Certificates of every graph completed from ``state``."""
    codes: Set[int] = set()
    stack = [state]
    while stack:
        current = stack.pop()
        masks, _, i = current
        if i == n:
            if not connected_only or _mask_connected(masks):
                codes.add(_certificate(n, masks).code)
            continue
        stack.extend(_children(n, degree, connected_only, current))
    return codes


def _parallel_map(func: Callable[..., Any], argument_tuples: Sequence[Tuple[Any, ...]], workers: int) -> List[Any]:
    """``[func(*args) for args in argument_tuples]``, across processes when workers > 1."""
    if workers <= 1 or len(argument_tuples) <= 1:
        return [func(*args) for args in argument_tuples]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, *args) for args in argument_tuples]
        return [future.result() for future in futures]


def _generate(n: int, degree: Optional[int], connected_only: bool, workers: int) -> List[CanonicalForm]:
    root: _State = (tuple([0] * n), tuple([0] * n), 0)
    frontier = [root]
    for _ in range(min(PARTITION_DEPTH, n) if workers > 1 else 0):
        frontier = [child for state in frontier for child in _children(n, degree, connected_only, state)]

    parts = _parallel_map(
        _codes_from_state, [(n, degree, connected_only, state) for state in frontier], workers
    )
    codes: Set[int] = set().union(*parts) if parts else set()
    return [CanonicalForm(order=n, code=code) for code in sorted(codes)]


def _check_regular_guard(n: int, k: int, config: EulerMod4Config) -> None:
    search = config.search
    if k > search.max_degree:
        raise ScaleGuardError(f"degree {k} exceeds desk-scale guard {search.max_degree}")
    limit = search.max_order_low_degree if k <= 5 else search.max_order_high_degree
    if n > limit:
        raise ScaleGuardError(f"order {n} exceeds desk-scale guard {limit} for degree {k}")


def enumerate_regular_graphs(
    n: int,
    k: int,
    connected_only: bool = True,
    config: Optional[EulerMod4Config] = None,
) -> Iterator[Graph]:
    """
    One representative per isomorphism class of k-regular graphs on n nodes.

    Representatives are canonical relabelings, yielded in increasing
    certificate order, so the stream is reproducible. Degrees above
    (n-1)/2 are generated as complements of (n-1-k)-regular graphs.

    Args:
        n: Order (>= 1)
        k: Degree, 0 <= k < n
        connected_only: Keep connected graphs only
        config: Guards and worker count (defaults if None)

    Raises:
        ParameterError: k outside [0, n) or n*k odd
        ScaleGuardError: Order or degree beyond the desk-scale guard

    Example:
        >>> sum(1 for _ in enumerate_regular_graphs(9, 4))
        16
    """
    config = config or create_default_config()
    if n < 1 or not 0 <= k < n:
        raise ParameterError(f"need 0 <= k < n, got n={n}, k={k}")
    if n * k % 2:
        raise ParameterError(f"no {k}-regular graph on {n} nodes: n*k is odd")
    _check_regular_guard(n, k, config)

    workers = resolve_workers(config)
    complement_degree = n - 1 - k
    if complement_degree < k:
        forms = _generate(n, complement_degree, False, workers)
        graphs = [form.to_graph().complement() for form in forms]
        if connected_only:
            graphs = [g for g in graphs if is_connected(g)]
        forms = sorted(_certificate(n, _masks(g)) for g in graphs)
    else:
        forms = _generate(n, k, connected_only, workers)

    logger.info(
        f"{len(forms)} {'connected ' if connected_only else ''}{k}-regular graph(s) on {n} nodes"
    )
    return (form.to_graph() for form in forms)


def enumerate_euler_graphs(n: int, config: Optional[EulerMod4Config] = None) -> Iterator[Graph]:
    """
    One representative per isomorphism class of connected Euler graphs on n nodes.

    Same generator as the regular enumeration, with every node required to
    have even degree.

    Raises:
        ParameterError: n < 1
        ScaleGuardError: n above search.max_order_euler
    """
    config = config or create_default_config()
    if n < 1:
        raise ParameterError(f"order must be >= 1, got {n}")
    if n > config.search.max_order_euler:
        raise ScaleGuardError(
            f"Euler-graph enumeration limited to order {config.search.max_order_euler}, got {n}"
        )
    forms = _generate(n, None, True, resolve_workers(config))
    logger.info(f"{len(forms)} connected Euler graph(s) on {n} nodes")
    return (form.to_graph() for form in forms)


def regular_euler_graphs(n: int, config: Optional[EulerMod4Config] = None) -> List[Graph]:
    """Connected regular Euler graphs of order n, by degree then certificate."""
    config = config or create_default_config()
    graphs: List[Graph] = []
    if n == 1:
        return list(enumerate_regular_graphs(1, 0, True, config))
    for k in range(2, n, 2):
        graphs.extend(enumerate_regular_graphs(n, k, True, config))
    return graphs


# ============================================================================
# Theorem Sweeps
# ============================================================================


@dataclass(frozen=True)
class _Instance:
    graph: Graph
    degree: int
    residues: FrozenSet[int]
    truncated: bool
    cycles_visited: int


def _profile_task(order: int, edges: Tuple[Tuple[int, int], ...], cap: int) -> Tuple[FrozenSet[int], bool, int]:
    return cycle_residues(build_graph(order, edges), cap)


def _sweep(n_min: int, n_max: int, config: EulerMod4Config) -> List[_Instance]:
    """Every connected regular Euler graph with 3 <= n_min <= order <= n_max."""
    if n_min < 3 or n_max < n_min:
        raise ParameterError(f"need 3 <= n_min <= n_max, got [{n_min}, {n_max}]")
    plan = [(n, k) for n in range(n_min, n_max + 1) for k in range(2, n, 2)]
    for n, k in plan:
        _check_regular_guard(n, k, config)

    graphs: List[Tuple[Graph, int]] = []
    for n, k in plan:
        graphs.extend((g, k) for g in enumerate_regular_graphs(n, k, True, config))

    profiles = _parallel_map(
        _profile_task,
        [(g.order, tuple(g.edge_list()), config.cycles.cap) for g, _ in graphs],
        resolve_workers(config),
    )
    instances = [
        _Instance(graph=g, degree=k, residues=residues, truncated=truncated, cycles_visited=visited)
        for (g, k), (residues, truncated, visited) in zip(graphs, profiles)
    ]
    logger.info(f"Swept {len(instances)} regular Euler graph(s) of order {n_min}..{n_max}")
    return instances


def _edge_string(graph: Graph) -> str:
    return serialize_graph(graph).strip().replace("\n", "; ")


def _theorem_report(
    theorem: str,
    n_min: int,
    n_max: int,
    instances: List[_Instance],
    premise: Callable[[_Instance], bool],
    holds: Callable[[_Instance], bool],
) -> TheoremReport:
    matches = [inst for inst in instances if not inst.truncated and premise(inst)]
    counterexamples = [_edge_string(inst.graph) for inst in matches if not holds(inst)]
    truncated = [_edge_string(inst.graph) for inst in instances if inst.truncated]
    if truncated:
        logger.warning(f"{len(truncated)} graph(s) had truncated profiles and were not judged")
    if counterexamples:
        logger.warning(f"Theorem '{theorem}': {len(counterexamples)} counterexample(s)")

    anchors: Dict[str, Any] = {}
    if truncated:
        anchors["truncated"] = truncated
    return TheoremReport(
        theorem=theorem,
        statement=STATEMENTS[theorem],
        n_min=n_min,
        n_max=n_max,
        degrees=sorted({inst.degree for inst in instances}),
        instances_examined=len(instances),
        premise_matches=len(matches),
        counterexamples=counterexamples,
        work_units=sum(inst.cycles_visited for inst in instances),
        anchors=anchors,
    )


def check_theorem_pure_regular(
    n_max: int, n_min: int = 3, config: Optional[EulerMod4Config] = None
) -> TheoremReport:
    """Every regular Euler graph with a single cycle type is a cycle graph."""
    config = config or create_default_config()
    instances = _sweep(n_min, n_max, config)
    return _theorem_report(
        "pure",
        n_min,
        n_max,
        instances,
        premise=lambda inst: len(inst.residues) == 1,
        holds=lambda inst: is_cycle_graph(inst.graph),
    )


def _two_types_hold(graph: Graph, residues: FrozenSet[int], degree: int) -> bool:
    return residues == {0, 2} and is_bipartite(graph) and degree > 2


def check_theorem_two_types(
    n_max: int, n_min: int = 3, config: Optional[EulerMod4Config] = None
) -> TheoremReport:
    """
    Every regular Euler graph with exactly two cycle types has types {0, 2},
    is bipartite and has degree above 2.
    """
    config = config or create_default_config()
    instances = _sweep(n_min, n_max, config)
    report = _theorem_report(
        "two",
        n_min,
        n_max,
        instances,
        premise=lambda inst: len(inst.residues) == 2,
        holds=lambda inst: _two_types_hold(inst.graph, inst.residues, inst.degree),
    )
    # Spot checks beyond the sweep: K4,4 and the 4-cube are 4-regular with types {0, 2}.
    for name, graph in (("K4,4", complete_bipartite_graph(4, 4)), ("Q4", hypercube(4))):
        residues, truncated, visited = cycle_residues(graph, config.cycles.cap)
        report.anchors[name] = sorted(residues)
        report.work_units += visited
        degree = degree_sequence(graph)[0]
        if not truncated and len(residues) == 2 and not _two_types_hold(graph, residues, degree):
            report.counterexamples.append(_edge_string(graph))
    return report


def check_conjecture_three_types(
    n_min: int, n_max: int, config: Optional[EulerMod4Config] = None
) -> TheoremReport:
    """
    No regular Euler graph of order in [n_min, n_max] has exactly three cycle types.

    The report anchors K5 ({0, 1, 3}) and the order-6 4-regular graph (all
    four types).

    Raises:
        ParameterError: n_min < 6
    """
    config = config or create_default_config()
    if n_min < 6:
        raise ParameterError(f"the conjecture concerns orders > 5, got n_min={n_min}")
    instances = _sweep(n_min, n_max, config)
    report = _theorem_report(
        "conjecture",
        n_min,
        n_max,
        instances,
        premise=lambda inst: True,
        holds=lambda inst: len(inst.residues) != 3,
    )
    report.anchors["K5"] = sorted(cycle_residues(complete_graph(5), config.cycles.cap)[0])
    octahedron = next(enumerate_regular_graphs(6, 4, True, config))
    report.anchors["order6_degree4"] = sorted(cycle_residues(octahedron, config.cycles.cap)[0])
    return report


def check_theorem_bipartite_pure(
    n_max: int, n_min: int = 3, config: Optional[EulerMod4Config] = None
) -> TheoremReport:
    """
    A single-type Euler graph is regular bipartite exactly when it is an even cycle.

    Runs over the regular sweep up to n_max, then over every connected Euler
    graph up to min(n_max, search.max_order_euler), regular or not.
    """
    config = config or create_default_config()
    instances = _sweep(n_min, n_max, config)
    report = _theorem_report(
        "bipartite",
        n_min,
        n_max,
        instances,
        premise=lambda inst: len(inst.residues) == 1,
        holds=lambda inst: _bipartite_pure_holds(inst.graph),
    )

    euler_max = min(n_max, config.search.max_order_euler)
    if euler_max < n_max:
        logger.info(f"Non-regular Euler graphs checked up to order {euler_max} only")
    examined = 0
    single_type = 0
    for n in range(n_min, euler_max + 1):
        for graph in enumerate_euler_graphs(n, config):
            examined += 1
            residues, truncated, visited = cycle_residues(graph, config.cycles.cap)
            report.work_units += visited
            if truncated or len(residues) != 1:
                continue
            single_type += 1
            if not _bipartite_pure_holds(graph):
                report.counterexamples.append(_edge_string(graph))
    report.anchors["euler_graphs"] = examined
    report.anchors["euler_single_type"] = single_type
    return report


def _bipartite_pure_holds(graph: Graph) -> bool:
    regular = len(set(degree_sequence(graph))) == 1
    even_cycle = is_cycle_graph(graph) and graph.order % 2 == 0
    return (regular and is_bipartite(graph)) == even_cycle


def check_theorem_at_most_two(
    n_max: int, n_min: int = 3, config: Optional[EulerMod4Config] = None
) -> TheoremReport:
    """Regular Euler graphs with at most two cycle types are cycles or bipartite of degree > 2."""
    config = config or create_default_config()
    instances = _sweep(n_min, n_max, config)
    return _theorem_report(
        "composite",
        n_min,
        n_max,
        instances,
        premise=lambda inst: len(inst.residues) <= 2,
        holds=lambda inst: is_cycle_graph(inst.graph)
        or (is_bipartite(inst.graph) and inst.degree > 2),
    )


# ============================================================================
# Evenness
# ============================================================================


def local_edge_connectivity(graph: Graph, u: int, v: int) -> int:
    """
    Maximum number of pairwise edge-disjoint u-v paths (unit-capacity max flow).

    Raises:
        NodeRangeError: u or v is not a node
        ParameterError: u == v

    Example:
        >>> from euler_mod4.families import complete_graph
        >>> local_edge_connectivity(complete_graph(5), 0, 3)
        4
    """
    missing = [w for w in (u, v) if not 0 <= w < graph.order]
    if missing:
        raise NodeRangeError(f"nodes {missing} not in graph of order {graph.order}")
    if u == v:
        raise ParameterError("local edge connectivity needs two distinct nodes")
    return int(nx_local_edge_connectivity(graph.to_networkx(), u, v))


def _evenness_violations(graph: Graph, with_connectivity: bool) -> List[str]:
    degrees = degree_sequence(graph)
    problems: List[str] = []
    if sum(degrees) != 2 * graph.size:
        problems.append(f"degree sum {sum(degrees)} != 2q = {2 * graph.size}")
    odd = sum(1 for d in degrees if d % 2)
    if odd % 2:
        problems.append(f"{odd} nodes of odd degree")
    if with_connectivity:
        for u in range(graph.order):
            for v in range(u + 1, graph.order):
                flow = local_edge_connectivity(graph, u, v)
                if flow % 2:
                    problems.append(f"local edge connectivity {flow} between {u} and {v}")
    return problems


def check_evenness(
    n_max: int,
    samples: int = 0,
    seed: Optional[int] = None,
    config: Optional[EulerMod4Config] = None,
) -> TheoremReport:
    """
    Evenness properties over every connected Euler graph up to order n_max,
    plus handshaking and odd-degree parity on ``samples`` random graphs.

    Raises:
        ScaleGuardError: n_max above search.max_order_euler
    """
    config = config or create_default_config()
    rng = random.Random(config.seed if seed is None else seed)

    counterexamples: List[str] = []
    by_order: Dict[str, int] = {}
    pairs = 0
    examined = 0
    for n in range(1, n_max + 1):
        graphs = list(enumerate_euler_graphs(n, config))
        by_order[str(n)] = len(graphs)
        for graph in graphs:
            examined += 1
            pairs += n * (n - 1) // 2
            if _evenness_violations(graph, with_connectivity=True):
                counterexamples.append(_edge_string(graph))

    for _ in range(samples):
        order = rng.randint(1, 12)
        graph = random_graph(order, rng.random(), seed=rng.randrange(2**32))
        examined += 1
        if _evenness_violations(graph, with_connectivity=False):
            counterexamples.append(_edge_string(graph))

    logger.info(f"Evenness: {examined} graph(s), {pairs} node pair(s), {len(counterexamples)} failure(s)")
    return TheoremReport(
        theorem="evenness",
        statement=STATEMENTS["evenness"],
        n_min=1,
        n_max=n_max,
        instances_examined=examined,
        premise_matches=examined,
        counterexamples=counterexamples,
        work_units=pairs,
        anchors={"euler_graphs_by_order": by_order, "random_graphs": samples},
    )
