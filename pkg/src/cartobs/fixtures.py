"""Reference graphs: the two factors of the worked example and a few small shapes.

The second factor is a reconstruction: six nodes, self-loops at 1, 2, 5, 6,
the 2-cycle 3 <-> 4 and cross links 2->1, 2->3, 5->4, 5->6. It has parent SCCs
{1}, {3,4}, {6}, a spanning cycle family, and is weakly connected.
"""

from __future__ import annotations

from .graph import DiGraph, build_graph


def contraction_factor() -> DiGraph:
    return build_graph([1, 2, 3], [(1, 2), (3, 2)])


def cycle_family_factor() -> DiGraph:
    return build_graph(
        range(1, 7),
        [(1, 1), (2, 2), (5, 5), (6, 6), (3, 4), (4, 3), (2, 1), (2, 3), (5, 4), (5, 6)],
    )


def directed_cycle(k: int) -> DiGraph:
    return build_graph(range(k), [(i, (i + 1) % k) for i in range(k)])


def directed_path(k: int) -> DiGraph:
    return build_graph(range(k), [(i, i + 1) for i in range(k - 1)])


def star_into_hub(leaves: int) -> DiGraph:
    """Leaves 1..k each linked into hub 0."""
    return build_graph(range(leaves + 1), [(i, 0) for i in range(1, leaves + 1)])


def fig3_pair() -> tuple[DiGraph, DiGraph]:
    """A 3-node path (one unmatched node) and a directed 3-cycle."""
    g1 = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    return g1, directed_cycle(3)
