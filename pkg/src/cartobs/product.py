"""Cartesian product of two directed graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyFactor, LabelCollision, SizeMismatch
from .graph import DiGraph

SEPARATOR = "|"


@dataclass(frozen=True)
class ProductGraph:
    graph: DiGraph
    left: DiGraph
    right: DiGraph

    def left_of(self, i: int) -> int:
        return i // self.right.n

    def right_of(self, i: int) -> int:
        return i % self.right.n

    def node(self, a: int, b: int) -> int:
        """Composite index of factor nodes ``(a, b)``."""
        return a * self.right.n + b

    def factor_labels(self, i: int) -> tuple[str, str]:
        return self.left.label(self.left_of(i)), self.right.label(self.right_of(i))


def composite_label(a: str, b: str) -> str:
    return f"{a}{SEPARATOR}{b}"


def cartesian_product(g1: DiGraph, g2: DiGraph) -> ProductGraph:
    """Build ``g1 □ g2``.

    Node ``(a, b)`` gets index ``a * n2 + b`` and label ``"a|b"``. There is an
    edge ``(a, b) -> (a', b')`` iff ``a == a'`` and ``b -> b'`` is in ``g2``, or
    ``b == b'`` and ``a -> a'`` is in ``g1``. Self-loops follow the same rule;
    when both factors loop at ``a`` and ``b`` the two rules give one loop, so
    ``|E| = n1 |E2| + n2 |E1| - loops1 * loops2``.

    Raises
    ------
    EmptyFactor
        Either factor has no nodes.
    LabelCollision
        Two composite labels coincide, which can only happen when factor
        labels already contain ``"|"``.
    """
    if g1.n == 0 or g2.n == 0:
        raise EmptyFactor("both factors of a Cartesian product need at least one node")
    n1, n2 = g1.n, g2.n
    labels = [composite_label(a, b) for a in g1.labels for b in g2.labels]
    if len(set(labels)) != len(labels):
        seen = set()
        for lbl in labels:
            if lbl in seen:
                raise LabelCollision(lbl)
            seen.add(lbl)
    edges = set()
    for a in range(n1):
        base = a * n2
        edges.update((base + b, base + c) for b, c in g2.edges)
    for a, c in g1.edges:
        edges.update((a * n2 + b, c * n2 + b) for b in range(n2))
    graph = DiGraph.from_indices(labels, edges)
    return ProductGraph(graph=graph, left=g1, right=g2)


def swap_map(p12: ProductGraph) -> list[int]:
    """Index map sending ``(a, b)`` in ``g1 □ g2`` to ``(b, a)`` in ``g2 □ g1``."""
    n1, n2 = p12.left.n, p12.right.n
    return [b * n1 + a for a in range(n1) for b in range(n2)]


def is_isomorphic_swap(p12: ProductGraph, p21: ProductGraph) -> bool:
    """Whether ``a|b -> b|a`` is an isomorphism from ``p12.graph`` onto ``p21.graph``."""
    if p12.graph.n != p21.graph.n or (p12.left.n, p12.right.n) != (p21.right.n, p21.left.n):
        raise SizeMismatch(
            f"cannot compare {p12.left.n}x{p12.right.n} with {p21.left.n}x{p21.right.n} product"
        )
    mapping = swap_map(p12)
    for i, j in enumerate(mapping):
        a, b = p12.factor_labels(i)
        if p21.factor_labels(j) != (b, a):
            return False
    mapped = {(mapping[u], mapping[v]) for u, v in p12.graph.edges}
    return mapped == set(p21.graph.edges)
