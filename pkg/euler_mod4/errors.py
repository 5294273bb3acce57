"""
Exception hierarchy for euler_mod4.

Library functions raise these; the CLI maps them onto exit statuses
(see ``euler_mod4.cli.EXIT_CODES``).
"""


class EulerMod4Error(Exception):
    """Base class for all errors raised by euler_mod4."""


class GraphError(EulerMod4Error, ValueError):
    """A graph invariant would be violated."""


class LoopEdgeError(GraphError):
    """An edge (u, u) was supplied."""


class DuplicateEdgeError(GraphError):
    """The same unordered pair was supplied twice (would create a multi-edge)."""


class NodeRangeError(GraphError):
    """A node id lies outside [0, order)."""


class GraphFormatError(EulerMod4Error, ValueError):
    """Edge-list text could not be parsed."""


class NotConnectedError(EulerMod4Error, ValueError):
    """The operation requires a connected graph."""


class NotEulerianError(EulerMod4Error, ValueError):
    """The operation requires an Euler graph (connected, all degrees even)."""


class ParameterError(EulerMod4Error, ValueError):
    """Invalid parameters for a constructor or a search."""


class LabelingMismatchError(EulerMod4Error, ValueError):
    """A labeling does not cover exactly the nodes of its graph."""


class TruncatedEnumerationError(EulerMod4Error):
    """A result depends on a cycle enumeration that hit its cap."""


class ScaleGuardError(EulerMod4Error):
    """The request exceeds the desk-scale guard for exhaustive search."""


class LabelingFormatError(EulerMod4Error, ValueError):
    """A labeling document could not be parsed."""
