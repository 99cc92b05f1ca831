"""Exception and warning types raised across the package."""


class CartobsError(Exception):
    """Base class for every error raised by this package."""


class GraphError(CartobsError, ValueError):
    pass


class DuplicateLabel(GraphError):
    def __init__(self, label):
        super().__init__(f"duplicate node label {label!r}")
        self.label = label


class UnknownEndpoint(GraphError):
    def __init__(self, edge, label):
        super().__init__(f"edge {edge!r} references unknown node {label!r}")
        self.edge = edge
        self.label = label


class DuplicateEdge(GraphError):
    def __init__(self, edge):
        super().__init__(f"duplicate edge {edge!r}")
        self.edge = edge


class EmptyFactor(GraphError):
    pass


class LabelCollision(GraphError):
    def __init__(self, label):
        super().__init__(f"composite label {label!r} is generated twice")
        self.label = label


class SizeMismatch(GraphError):
    pass


class NotAPermutation(CartobsError, RuntimeError):
    """The matched links do not form a permutation although s_rank == n."""


class UnknownObserver(GraphError):
    def __init__(self, observer):
        super().__init__(f"observer {observer!r} is not a node of the graph")
        self.observer = observer


class NumericOverflow(CartobsError, ArithmeticError):
    pass


class NotNumericallyObservable(CartobsError):
    pass


class DivergedEstimate(CartobsError, ArithmeticError):
    pass


class ParseError(CartobsError, ValueError):
    """Input text could not be turned into a graph.

    ``line`` and ``column`` are 1-based and ``None`` when the problem is not
    tied to a position (e.g. an empty node list).
    """

    def __init__(self, message, line=None, column=None, source=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{where + ': ' if where else ''}{message}")
        self.line = line
        self.column = column
        self.source = source


class StructureWarning(UserWarning):
    """Input is valid but outside the assumptions some result relies on."""


class ZeroStructure(StructureWarning):
    """A graph without edges was given a numeric realization."""
