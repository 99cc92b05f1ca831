"""Maximum matching, structural rank, spanning cycle families and contractions.

A directed graph is matched through its bipartite representation: a left
copy of every node (link start) and a right copy (link end), with one
bipartite edge per directed edge, self-loops included. A node is *matched*
when it starts a matched link; the rest form the unmatched set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotAPermutation
from .graph import DiGraph

_INF = float("inf")


def hopcroft_karp(adj: Sequence[Sequence[int]], n_right: int,
                  order: Iterable[int] | None = None) -> list[int]:
    """Maximum bipartite matching.

    ``adj[u]`` lists the right vertices adjacent to left vertex ``u``. Free
    left vertices are augmented from in ``order`` (default: descending index)
    and neighbours are tried in the order given, so the result is
    reproducible. Returns ``pair`` with ``pair[u]`` the right mate of ``u`` or
    -1.
    """
    n_left = len(adj)
    order = list(range(n_left - 1, -1, -1)) if order is None else list(order)
    pair_l = [-1] * n_left
    pair_r = [-1] * n_right
    dist = [_INF] * n_left

    def bfs() -> bool:
        queue = deque()
        for u in order:
            if pair_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = pair_r[v]
                if w == -1:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    ptr = [0] * n_left
    chosen = [-1] * n_left

    def augment(root: int) -> bool:
        path = [root]
        while path:
            u = path[-1]
            descended = False
            nbrs = adj[u]
            while ptr[u] < len(nbrs):
                v = nbrs[ptr[u]]
                ptr[u] += 1
                w = pair_r[v]
                if w == -1:
                    chosen[u] = v
                    for x in path:
                        pair_l[x] = chosen[x]
                        pair_r[chosen[x]] = x
                    return True
                if dist[w] == dist[u] + 1:
                    chosen[u] = v
                    path.append(w)
                    descended = True
                    break
            if not descended:
                dist[u] = _INF
                path.pop()
        return False

    while bfs():
        for u in range(n_left):
            ptr[u] = 0
        for u in order:
            if pair_l[u] == -1:
                augment(u)
    return pair_l


def alternating_reach(adj: Sequence[Sequence[int]], pair_r: Sequence[int],
                      starts: Iterable[int]) -> tuple[set[int], set[int]]:
    """Left and right vertices reachable from ``starts`` along alternating paths."""
    left = set(starts)
    right: set[int] = set()
    queue = deque(sorted(left))
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in right:
                continue
            right.add(v)
            w = pair_r[v]
            if w != -1 and w not in left:
                left.add(w)
                queue.append(w)
    return left, right


@dataclass(frozen=True)
class MaximumMatching:
    matched_links: frozenset[tuple[int, int]]
    matched_nodes: frozenset[int]
    unmatched_nodes: frozenset[int]
    s_rank: int
    n: int

    def successor(self) -> dict[int, int]:
        return dict(self.matched_links)


@dataclass(frozen=True)
class Contraction:
    kappa: frozenset[int]
    neighborhood: frozenset[int]


def _bipartite(g: DiGraph) -> list[tuple[int, ...]]:
    return [g.successors(u) for u in range(g.n)]


def maximum_matching(g: DiGraph) -> MaximumMatching:
    """Canonical maximum matching of ``g``.

    Free start nodes are augmented from in descending index order, so among
    equally large matchings the lower-indexed nodes tend to be left unmatched
    (for 1->2, 3->2 the result is {3->2} with nodes 1 and 2 unmatched).
    """
    pair = hopcroft_karp(_bipartite(g), g.n)
    links = frozenset((u, v) for u, v in enumerate(pair) if v != -1)
    matched = frozenset(u for u, _ in links)
    return MaximumMatching(
        matched_links=links,
        matched_nodes=matched,
        unmatched_nodes=frozenset(range(g.n)) - matched,
        s_rank=len(links),
        n=g.n,
    )


def structural_rank(g: DiGraph) -> int:
    return maximum_matching(g).s_rank


def has_spanning_cycle_family(g: DiGraph) -> bool:
    return maximum_matching(g).s_rank == g.n


def extract_cycle_family(g: DiGraph, m: MaximumMatching | None = None) -> list[list[int]] | None:
    """Disjoint cycles covering every node, or ``None`` without a perfect matching.

    Each cycle is listed in traversal order starting from its smallest node;
    cycles are ordered by that node.
    """
    if m is None:
        m = maximum_matching(g)
    if m.s_rank != g.n:
        return None
    succ = m.successor()
    if sorted(succ) != list(range(g.n)) or sorted(succ.values()) != list(range(g.n)):
        raise NotAPermutation("perfect matching does not map nodes one-to-one")
    for a, b in succ.items():
        if (a, b) not in g.edges:
            raise NotAPermutation(f"matched link {(a, b)} is not an edge")
    seen = [False] * g.n
    cycles = []
    for start in range(g.n):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = succ[v]
        if v != start:
            raise NotAPermutation(f"walk from {start} closes at {v}")
        cycles.append(cycle)
    return cycles


def neighborhood(g: DiGraph, kappa: Iterable[int]) -> frozenset[int]:
    return frozenset(b for a in kappa for b in g.successors(a))


def find_contraction(g: DiGraph, m: MaximumMatching | None = None) -> Contraction | None:
    """Node set whose out-neighbourhood is strictly smaller than itself.

    Built from the left nodes alternating-reachable from the unmatched nodes
    that have outgoing links. Unmatched nodes without outgoing links are
    contractions of their own (empty neighbourhood) and are only returned
    when no other unmatched node exists. ``None`` when the matching is
    perfect.
    """
    if m is None:
        m = maximum_matching(g)
    if m.s_rank == g.n:
        return None
    adj = _bipartite(g)
    pair_r = [-1] * g.n
    for a, b in m.matched_links:
        pair_r[b] = a
    starts = [u for u in sorted(m.unmatched_nodes) if adj[u]]
    if not starts:
        kappa = frozenset(m.unmatched_nodes)
        return Contraction(kappa=kappa, neighborhood=frozenset())
    left, right = alternating_reach(adj, pair_r, starts)
    return Contraction(kappa=frozenset(left), neighborhood=frozenset(right))
