"""Strongly connected components and parent (root) classification."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import DiGraph


@dataclass(frozen=True)
class SccDecomposition:
    """SCC membership plus the condensation DAG.

    Components are numbered in a topological order of the condensation
    (every condensation edge goes from a lower to a higher index, so sink
    components come last); ties are broken by smallest contained node.
    """

    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    condensation: frozenset[tuple[int, int]]

    def sinks(self) -> list[int]:
        has_out = {i for i, _ in self.condensation}
        return [c for c in range(len(self.components)) if c not in has_out]


@dataclass(frozen=True)
class ParentClassification:
    parent_sccs: tuple[tuple[int, ...], ...]
    parent_nodes: tuple[int, ...]
    # component index of each entry above, same order
    parent_scc_ids: tuple[int, ...] = ()
    parent_node_ids: tuple[int, ...] = ()

    @property
    def count(self) -> int:
        return len(self.parent_sccs) + len(self.parent_nodes)


def _tarjan(g: DiGraph) -> list[list[int]]:
    # iterative so deep chains do not hit the recursion limit
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            succ = g.successors(v)
            if pos < len(succ):
                work[-1] = (v, pos + 1)
                w = succ[pos]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def scc_decompose(g: DiGraph) -> SccDecomposition:
    raw = _tarjan(g)
    raw_of = [0] * g.n
    for c, comp in enumerate(raw):
        for v in comp:
            raw_of[v] = c
    dag = {(raw_of[a], raw_of[b]) for a, b in g.edges if raw_of[a] != raw_of[b]}

    # Kahn's algorithm keyed by smallest node of each component
    indeg = [0] * len(raw)
    out_edges: list[list[int]] = [[] for _ in raw]
    for a, b in dag:
        indeg[b] += 1
        out_edges[a].append(b)
    heap = [(raw[c][0], c) for c in range(len(raw)) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for d in out_edges[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(heap, (raw[d][0], d))
    renum = {old: new for new, old in enumerate(order)}
    return SccDecomposition(
        component_of=tuple(renum[raw_of[v]] for v in range(g.n)),
        components=tuple(tuple(raw[old]) for old in order),
        condensation=frozenset((renum[a], renum[b]) for a, b in dag),
    )


def classify_parents(g: DiGraph, d: SccDecomposition | None = None) -> ParentClassification:
    """Split the condensation sinks into parent SCCs and parent nodes.

    A sink with two or more nodes, or a single node carrying a self-loop, is a
    parent SCC; a single node without self-loop (isolated nodes included) is
    a parent node.
    """
    if d is None:
        d = scc_decompose(g)
    sccs, scc_ids, nodes, node_ids = [], [], [], []
    for c in d.sinks():
        comp = d.components[c]
        if len(comp) == 1 and not g.has_self_loop(comp[0]):
            nodes.append(comp[0])
            node_ids.append(c)
        else:
            sccs.append(comp)
            scc_ids.append(c)
    return ParentClassification(tuple(sccs), tuple(nodes), tuple(scc_ids), tuple(node_ids))


def count_parents(g: DiGraph) -> int:
    return classify_parents(g).count
