"""
Graceful Labelings

The closed-form graceful numbering of G(t,s), its serial order, a general
verifier for graceful labelings, and a backtracking search used as an
independent oracle on small graphs.

A labeling φ of a (p,q)-graph is graceful when node labels are distinct
values in {0..q} and the induced edge labels |φ(u) - φ(v)| are exactly
{1..q}.

Example:
    >>> from euler_mod4.families import GtsParams, gts
    >>> params = GtsParams(t=4, s=3)
    >>> verify_graceful(gts(params).graph, gts_labeling(params)).valid
    True
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from .errors import LabelingFormatError, LabelingMismatchError, ParameterError
from .families import GtsParams, gts
from .graph_core import Edge, Graph
from .reports import GracefulReport, LabelingDocument

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000_000

FOUND = "found"
ABSENT = "absence"
INCONCLUSIVE = "inconclusive"


# ============================================================================
# Domain Types
# ============================================================================


@dataclass(frozen=True)
class GracefulLabeling:
    """
    Node labeling of a (p,q)-graph.

    Attributes:
        node_labels: Node id -> label in [0, q]
        q: Size of the labeled graph
    """

    node_labels: Dict[int, int]
    q: int

    def edge_labels(self, graph: Graph) -> Dict[Edge, int]:
        """Induced label |φ(u) - φ(v)| of every edge."""
        return {
            (u, v): abs(self.node_labels[u] - self.node_labels[v]) for u, v in graph.edge_list()
        }

    def to_document(self) -> LabelingDocument:
        return LabelingDocument(
            labels={str(u): value for u, value in sorted(self.node_labels.items())}, q=self.q
        )


@dataclass(frozen=True)
class SerialOrder:
    """
    Rank of every node when nodes are sorted by ascending label.

    Attributes:
        ranks: Node id -> rank in [1, p]
    """

    ranks: Dict[int, int]


@dataclass(frozen=True)
class GtsProgressions:
    """
    The arithmetic progressions visible in the G(t,s) numbering.

    Attributes:
        lower_rows: Middle labels of each lower-half row (difference 2t)
        lower_columns: Labels of each middle column over the lower rows,
            top to bottom (difference -1)
        upper_first_column: First middle label of the upper rows, from row
            t-1 up to row 0 (difference 2s-1)
        upper_rows: Middle labels of each upper-half row (difference 2)
    """

    lower_rows: List[List[int]]
    lower_columns: List[List[int]]
    upper_first_column: List[int]
    upper_rows: List[List[int]]


@dataclass(frozen=True)
class GracefulSearchResult:
    """
    Outcome of search_graceful.

    Attributes:
        status: "found", "absence" (search space exhausted) or "inconclusive"
            (budget exhausted first)
        labeling: The labeling when status == "found"
        assignments: Node-label assignments attempted
    """

    status: str
    labeling: Optional[GracefulLabeling] = None
    assignments: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


# ============================================================================
# G(t,s) Numbering
# ============================================================================


def _gts_label(params: GtsParams, r: int, j: int) -> int:
    t, s = params.t, params.s
    if j == 0:
        return r
    if r >= t:
        return 2 * j * t + (2 * t - 1 - r)
    k = t - 1 - r
    return 2 * s * t + (t - 1) + 2 + k * (2 * s - 1) + 2 * (j - 1)


def gts_labeling(params: GtsParams) -> GracefulLabeling:
    """
    Closed-form graceful numbering of G(t,s), filled in over the grid.

    Column 0 of row r gets r. Lower rows r = t..2t-1 get 2jt + (2t-1-r) in
    column j. Upper rows r = 0..t-1 get 2st + t + 1 + k(2s-1) + 2(j-1) with
    k = t-1-r. Labels run from 0 to q = 4ts.

    Example:
        >>> labeling = gts_labeling(GtsParams(t=1, s=1))
        >>> sorted(labeling.node_labels.values())
        [0, 1, 2, 4]
    """
    layout = gts(params)
    labels: Dict[int, int] = {}
    for r, row in enumerate(layout.grid):
        for j, node in enumerate(row):
            labels[node] = _gts_label(params, r, j)
    return GracefulLabeling(node_labels=labels, q=params.size)


def gts_serial_order(params: GtsParams) -> SerialOrder:
    """Ascending-label rank of every node of G(t,s); the node labeled 0 has rank 1."""
    labels = gts_labeling(params).node_labels
    ordered = sorted(labels, key=labels.__getitem__)
    return SerialOrder(ranks={node: rank for rank, node in enumerate(ordered, start=1)})


def ap_rows(params: GtsParams) -> GtsProgressions:
    t, s = params.t, params.s
    columns = range(1, s + 1)
    return GtsProgressions(
        lower_rows=[[_gts_label(params, r, j) for j in columns] for r in range(t, 2 * t)],
        lower_columns=[[_gts_label(params, r, j) for r in range(t, 2 * t)] for j in columns],
        upper_first_column=[_gts_label(params, r, 1) for r in range(t - 1, -1, -1)],
        upper_rows=[[_gts_label(params, r, j) for j in columns] for r in range(t)],
    )


# ============================================================================
# Verification
# ============================================================================


def verify_graceful(graph: Graph, labeling: GracefulLabeling) -> GracefulReport:
    """
    Check a labeling against the graceful conditions.

    Args:
        graph: The labeled graph
        labeling: Must name exactly the nodes 0..p-1

    Returns:
        GracefulReport: valid flag plus one violation string per problem
            (duplicate or out-of-range node labels, duplicate or missing
            edge labels)

    Raises:
        LabelingMismatchError: The labeled node set differs from the graph's
    """
    nodes = set(labeling.node_labels)
    expected = set(range(graph.order))
    if nodes != expected:
        extra = sorted(nodes - expected)
        missing = sorted(expected - nodes)
        raise LabelingMismatchError(
            f"labeling does not match graph nodes (extra={extra}, missing={missing})"
        )

    q = graph.size
    violations: List[str] = []
    if labeling.q != q:
        violations.append(f"labeling declares q={labeling.q} but graph has q={q}")

    owners: Dict[int, List[int]] = {}
    for node, value in sorted(labeling.node_labels.items()):
        owners.setdefault(value, []).append(node)
        if not 0 <= value <= q:
            violations.append(f"node {node} label {value} outside [0, {q}]")
    for value, holders in sorted(owners.items()):
        if len(holders) > 1:
            violations.append(f"label {value} used by nodes {holders}")

    carriers: Dict[int, List[Edge]] = {}
    for edge, difference in labeling.edge_labels(graph).items():
        carriers.setdefault(difference, []).append(edge)
    for difference, edges in sorted(carriers.items()):
        if len(edges) > 1:
            violations.append(f"edge label {difference} on edges {edges}")
        if not 1 <= difference <= q:
            violations.append(f"edge label {difference} outside [1, {q}]")
    missing_labels = [d for d in range(1, q + 1) if d not in carriers]
    if missing_labels:
        violations.append(f"edge labels missing: {missing_labels}")

    return GracefulReport(valid=not violations, violations=violations)


def complement_labeling(labeling: GracefulLabeling) -> GracefulLabeling:
    """u -> q - φ(u); graceful whenever φ is."""
    return GracefulLabeling(
        node_labels={u: labeling.q - value for u, value in labeling.node_labels.items()},
        q=labeling.q,
    )


# ============================================================================
# Search
# ============================================================================


class _BudgetExhausted(Exception):
    pass


@dataclass
class _SearchState:
    adjacency: Tuple[Tuple[int, ...], ...]
    edges: List[Edge]
    q: int
    budget: int
    labels: List[int] = field(default_factory=list)
    label_used: List[bool] = field(default_factory=list)
    difference_used: List[bool] = field(default_factory=list)
    assignments: int = 0

    def assign(self, node: int, value: int) -> Optional[List[int]]:
        """Label ``node``; returns the new differences, or None on a clash."""
        if self.assignments >= self.budget:
            raise _BudgetExhausted()
        self.assignments += 1
        if self.label_used[value]:
            return None
        differences = [
            abs(value - self.labels[w]) for w in self.adjacency[node] if self.labels[w] >= 0
        ]
        if len(set(differences)) != len(differences) or any(
            self.difference_used[d] for d in differences
        ):
            return None
        self.labels[node] = value
        self.label_used[value] = True
        for d in differences:
            self.difference_used[d] = True
        return differences

    def unassign(self, node: int, differences: List[int]) -> None:
        self.label_used[self.labels[node]] = False
        self.labels[node] = -1
        for d in differences:
            self.difference_used[d] = False

    def place(self, d: int) -> bool:
        """Realize every difference <= d, largest first."""
        while d >= 1 and self.difference_used[d]:
            d -= 1
        if d == 0:
            return True

        # One end already labeled.
        for u, v in self.edges:
            for known, fresh in ((u, v), (v, u)):
                if self.labels[known] < 0 or self.labels[fresh] >= 0:
                    continue
                for value in (self.labels[known] + d, self.labels[known] - d):
                    if 0 <= value <= self.q and self._try((fresh, value), d):
                        return True

        # Both ends free. With nothing labeled yet, complementation lets the
        # first edge take (0, q) in one orientation only.
        first = not any(self.label_used)
        for u, v in self.edges:
            if self.labels[u] >= 0 or self.labels[v] >= 0:
                continue
            for low in range(0, self.q - d + 1):
                orientations = [(low, low + d)] if first else [(low, low + d), (low + d, low)]
                for a, b in orientations:
                    if self._try((u, a), d, (v, b)):
                        return True
        return False

    def _try(self, first: Tuple[int, int], d: int, second: Optional[Tuple[int, int]] = None) -> bool:
        made = self.assign(*first)
        if made is None:
            return False
        if second is not None:
            made_second = self.assign(*second)
            if made_second is None:
                self.unassign(first[0], made)
                return False
        else:
            made_second = []
        if self.place(d - 1):
            return True
        if second is not None:
            self.unassign(second[0], made_second)
        self.unassign(first[0], made)
        return False


def search_graceful(graph: Graph, budget: int = DEFAULT_BUDGET) -> GracefulSearchResult:
    """
    Backtracking search for a graceful labeling.

    Differences are realized from q downward; each step either extends a
    labeled node along a free edge or labels both ends of a free edge.
    Every graceful labeling is reachable this way, so an exhausted search
    proves absence.

    Args:
        graph: Graph with q >= 1
        budget: Maximum node-label assignments attempted

    Returns:
        GracefulSearchResult: "found" with a verified labeling, "absence", or
            "inconclusive" when the budget ran out

    Raises:
        ParameterError: q < 1 or budget < 1

    Example:
        >>> from euler_mod4.families import cycle_graph
        >>> search_graceful(cycle_graph(5)).status
        'absence'
    """
    q = graph.size
    if q < 1:
        raise ParameterError("graceful search needs at least one edge")
    if budget < 1:
        raise ParameterError(f"budget must be >= 1, got {budget}")
    if graph.order > q + 1:
        logger.info(f"Order {graph.order} exceeds q+1={q + 1}: no injective labeling exists")
        return GracefulSearchResult(status=ABSENT)

    state = _SearchState(
        adjacency=graph.adjacency,
        edges=graph.edge_list(),
        q=q,
        budget=budget,
        labels=[-1] * graph.order,
        label_used=[False] * (q + 1),
        difference_used=[False] * (q + 1),
    )

    try:
        success = state.place(q)
    except _BudgetExhausted:
        logger.warning(f"Graceful search inconclusive after {state.assignments} assignments")
        return GracefulSearchResult(status=INCONCLUSIVE, assignments=state.assignments)

    if not success:
        logger.info(f"No graceful labeling exists ({state.assignments} assignments)")
        return GracefulSearchResult(status=ABSENT, assignments=state.assignments)

    # Isolated nodes take the smallest unused labels.
    spare = iter(value for value in range(q + 1) if not state.label_used[value])
    labels = {u: (value if value >= 0 else next(spare)) for u, value in enumerate(state.labels)}
    labeling = GracefulLabeling(node_labels=labels, q=q)
    logger.info(f"Found graceful labeling after {state.assignments} assignments")
    return GracefulSearchResult(status=FOUND, labeling=labeling, assignments=state.assignments)


# ============================================================================
# Labeling Documents
# ============================================================================


def parse_labeling(text: str) -> GracefulLabeling:
    """
    Parse a labeling document {"labels": {node: value}, "q": q}.

    Raises:
        LabelingFormatError: Not valid JSON, wrong shape or non-integer node ids
    """
    try:
        document = LabelingDocument.model_validate_json(text)
    except ValidationError as e:
        raise LabelingFormatError(f"malformed labeling document: {e.error_count()} error(s)") from e
    try:
        labels = {int(node): value for node, value in document.labels.items()}
    except ValueError as e:
        raise LabelingFormatError(f"non-integer node id in labeling: {e}") from e
    return GracefulLabeling(node_labels=labels, q=document.q)


def serialize_labeling(labeling: GracefulLabeling) -> str:
    return labeling.to_document().model_dump_json(indent=2) + "\n"
