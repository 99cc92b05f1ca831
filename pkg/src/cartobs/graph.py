"""Immutable directed graph used as the input of every analysis.

Nodes are addressed by a dense 0-based index and carry a unique text label.
An edge ``(a, b)`` means "a influences b"; the adjacency pattern places it at
row ``b``, column ``a`` so that ``x' = A x`` propagates along edge direction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DuplicateEdge, DuplicateLabel, UnknownEndpoint


class NodeId(NamedTuple):
    index: int
    label: str


@dataclass(frozen=True, eq=False)
class DiGraph:
    """Directed graph with labeled nodes, self-loops allowed, no multi-edges.

    Construct through :func:`build_graph` (label based) or
    :meth:`DiGraph.from_indices`; both validate their input.
    """

    labels: tuple[str, ...]
    edges: frozenset[tuple[int, int]]
    _succ: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _pred: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _index: dict = field(repr=False, compare=False)

    @classmethod
    def from_indices(cls, labels: Sequence[str], edges: Iterable[tuple[int, int]]) -> "DiGraph":
        labels = tuple(str(lbl) for lbl in labels)
        index = {}
        for i, lbl in enumerate(labels):
            if lbl in index:
                raise DuplicateLabel(lbl)
            index[lbl] = i
        n = len(labels)
        seen = set()
        for e in edges:
            a, b = int(e[0]), int(e[1])
            for end in (a, b):
                if not 0 <= end < n:
                    raise UnknownEndpoint((a, b), end)
            if (a, b) in seen:
                raise DuplicateEdge((labels[a], labels[b]))
            seen.add((a, b))
        succ = [[] for _ in range(n)]
        pred = [[] for _ in range(n)]
        for a, b in seen:
            succ[a].append(b)
            pred[b].append(a)
        return cls(
            labels=labels,
            edges=frozenset(seen),
            _succ=tuple(tuple(sorted(s)) for s in succ),
            _pred=tuple(tuple(sorted(p)) for p in pred),
            _index=index,
        )

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(NodeId(i, lbl) for i, lbl in enumerate(self.labels))

    def successors(self, i: int) -> tuple[int, ...]:
        return self._succ[i]

    def predecessors(self, i: int) -> tuple[int, ...]:
        return self._pred[i]

    def has_self_loop(self, i: int) -> bool:
        return (i, i) in self.edges

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"no node labeled {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def label_edges(self) -> list[tuple[str, str]]:
        return [(self.labels[a], self.labels[b]) for a, b in self.sorted_edges()]

    def reversed(self) -> "DiGraph":
        return DiGraph.from_indices(self.labels, ((b, a) for a, b in self.edges))

    def __eq__(self, other):
        if not isinstance(other, DiGraph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self):
        return hash((self.labels, self.edges))

    def __len__(self):
        return self.n


def build_graph(node_labels: Sequence, edges: Iterable[tuple]) -> DiGraph:
    """Build a validated graph from labels and label pairs.

    Labels are converted with ``str`` so ``[1, 2, 3]`` and ``["1", "2", "3"]``
    describe the same graph.

    Raises
    ------
    DuplicateLabel, UnknownEndpoint, DuplicateEdge
    """
    labels = [str(lbl) for lbl in node_labels]
    index = {}
    for i, lbl in enumerate(labels):
        if lbl in index:
            raise DuplicateLabel(lbl)
        index[lbl] = i
    pairs = []
    seen = set()
    for edge in edges:
        a, b = (str(x) for x in edge)
        for end in (a, b):
            if end not in index:
                raise UnknownEndpoint((a, b), end)
        if (a, b) in seen:
            raise DuplicateEdge((a, b))
        seen.add((a, b))
        pairs.append((index[a], index[b]))
    return DiGraph.from_indices(labels, pairs)


def is_connected(g: DiGraph) -> bool:
    """True iff the underlying undirected graph has a single component."""
    if g.n == 0:
        return False
    return len(weak_components(g)) == 1


def weak_components(g: DiGraph) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by smallest index."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        comp = []
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in g.successors(u) + g.predecessors(u):
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def adjacency_pattern(g: DiGraph) -> np.ndarray:
    """Boolean n x n pattern with ``P[b, a]`` set for every edge ``a -> b``."""
    pattern = np.zeros((g.n, g.n), dtype=bool)
    for a, b in g.edges:
        pattern[b, a] = True
    return pattern
