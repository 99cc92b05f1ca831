"""Observer placement and structural observability checks.

A node set is structurally observable when (i) every node has a directed
path to some observer and (ii) the nodes can be covered by disjoint cycles
and disjoint paths that each end at a distinct observer.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import StructureWarning, UnknownObserver
from .graph import DiGraph, is_connected
from .matching import hopcroft_karp, maximum_matching
from .product import cartesian_product
from .structure import classify_parents, scc_decompose


@dataclass(frozen=True)
class UnmatchedCover:
    def to_json(self):
        return {"kind": "unmatched_cover"}


@dataclass(frozen=True)
class ParentSccCover:
    component: int

    def to_json(self):
        return {"kind": "parent_scc_cover", "component": self.component}


@dataclass(frozen=True)
class ObserverPlan:
    observers: frozenset[int]
    reasons: dict[int, tuple] = field(compare=False)
    num_unmatched_covered: int
    num_parent_sccs_covered: int

    @property
    def counts(self) -> tuple[int, int]:
        return self.num_unmatched_covered, self.num_parent_sccs_covered

    def parent_only(self) -> list[int]:
        """Observers whose only justification is covering a parent SCC."""
        return sorted(
            v for v, tags in self.reasons.items()
            if all(isinstance(t, ParentSccCover) for t in tags)
        )


@dataclass(frozen=True)
class OutputConnectivity:
    witness: int


@dataclass(frozen=True)
class SpanningDeficiency:
    uncovered: int


@dataclass(frozen=True)
class ObservabilityVerdict:
    observable: bool
    failed_condition: OutputConnectivity | SpanningDeficiency | None = None


def _warn_disconnected(g: DiGraph, what: str) -> None:
    if g.n and not is_connected(g):
        warnings.warn(f"{what}: graph is not weakly connected", StructureWarning, stacklevel=3)


def plan_observers(g: DiGraph) -> ObserverPlan:
    """Observers that make ``g`` structurally observable.

    Every unmatched node of the canonical matching is observed, plus the
    smallest node of each parent SCC that holds no unmatched node. Parent
    nodes are always unmatched, so they are covered by the first rule. The
    plan is minimal for that matching, not over all maximum matchings.
    """
    _warn_disconnected(g, "plan_observers")
    m = maximum_matching(g)
    d = scc_decompose(g)
    parents = classify_parents(g, d)
    reasons: dict[int, list] = {v: [UnmatchedCover()] for v in sorted(m.unmatched_nodes)}
    for comp, cid in zip(parents.parent_sccs, parents.parent_scc_ids):
        inside = [v for v in comp if v in m.unmatched_nodes]
        rep = inside[0] if inside else comp[0]
        reasons.setdefault(rep, []).append(ParentSccCover(cid))
    return ObserverPlan(
        observers=frozenset(reasons),
        reasons={v: tuple(tags) for v, tags in sorted(reasons.items())},
        num_unmatched_covered=len(m.unmatched_nodes),
        num_parent_sccs_covered=len(parents.parent_sccs),
    )


def _validate_observers(g: DiGraph, observers: Iterable[int]) -> list[int]:
    out = set()
    for o in observers:
        if isinstance(o, bool) or not isinstance(o, int) or not 0 <= o < g.n:
            raise UnknownObserver(o)
        out.add(o)
    return sorted(out)


def reaching_nodes(g: DiGraph, targets: Iterable[int]) -> set[int]:
    """Nodes with a directed path (possibly empty) to some target."""
    seen = set(targets)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for u in g.predecessors(v):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def augmented_matching_size(g: DiGraph, observers: Iterable[int]) -> int:
    """Size of a maximum matching after giving each observer a private sink.

    Equals ``n`` iff the nodes can be covered by disjoint cycles and disjoint
    paths each terminating at its own observer.
    """
    obs = sorted(set(observers))
    sink = {o: g.n + k for k, o in enumerate(obs)}
    adj = [g.successors(u) + ((sink[u],) if u in sink else ()) for u in range(g.n)]
    pair = hopcroft_karp(adj, g.n + len(obs))
    return sum(1 for v in pair if v != -1)


def check_observable(g: DiGraph, observers: Iterable[int]) -> ObservabilityVerdict:
    """Check both structural observability conditions for an observer set.

    Output connectivity is tested first. Its witness is the smallest node of
    a parent component holding no observer; such a component exists whenever
    some node cannot reach an observer.

    Raises
    ------
    UnknownObserver
        An observer is not a node index of ``g``.
    """
    obs = _validate_observers(g, observers)
    reach = reaching_nodes(g, obs)
    if len(reach) < g.n:
        d = scc_decompose(g)
        witness = next(
            d.components[c][0] for c in d.sinks() if d.components[c][0] not in reach
        )
        return ObservabilityVerdict(False, OutputConnectivity(witness))
    covered = augmented_matching_size(g, obs)
    if covered < g.n:
        return ObservabilityVerdict(False, SpanningDeficiency(g.n - covered))
    return ObservabilityVerdict(True)


@dataclass
class ProductRecoveryReport:
    factor_s_ranks: tuple[int, int]
    factor_spanning_cycle_family: tuple[bool, bool]
    factor_unmatched: tuple[tuple[int, ...], tuple[int, ...]]
    product_n: int
    product_s_rank: int
    product_unmatched: tuple[int, ...]
    parent_counts: tuple[int, int, int]
    parent_product_holds: bool
    factors_connected: tuple[bool, bool]
    observer_counts: tuple[int, int, int]
    recovered: bool
    unmatched_recovery_expected: bool

    @property
    def assumptions_hold(self) -> bool:
        return all(self.factors_connected)


def verify_product_recovery(g1: DiGraph, g2: DiGraph) -> ProductRecoveryReport:
    """Compare factor and product observability requirements.

    ``recovered`` is true when some factor has unmatched nodes while the
    product has none. ``unmatched_recovery_expected`` records whether either
    factor has a spanning cycle family, which guarantees an unmatched-free
    product. The parent-count product rule is only claimed for weakly
    connected factors; ``factors_connected`` says whether that holds.
    """
    connected = (is_connected(g1), is_connected(g2))
    if not all(connected):
        warnings.warn(
            "verify_product_recovery: a factor is not weakly connected; "
            "the parent-count product rule is only established for connected factors",
            StructureWarning, stacklevel=2,
        )
    p = cartesian_product(g1, g2).graph
    m1, m2, mp = maximum_matching(g1), maximum_matching(g2), maximum_matching(p)
    c1, c2, cp = (classify_parents(x).count for x in (g1, g2, p))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StructureWarning)
        obs = tuple(len(plan_observers(x).observers) for x in (g1, g2, p))
    scf = (m1.s_rank == g1.n, m2.s_rank == g2.n)
    return ProductRecoveryReport(
        factor_s_ranks=(m1.s_rank, m2.s_rank),
        factor_spanning_cycle_family=scf,
        factor_unmatched=(tuple(sorted(m1.unmatched_nodes)), tuple(sorted(m2.unmatched_nodes))),
        product_n=p.n,
        product_s_rank=mp.s_rank,
        product_unmatched=tuple(sorted(mp.unmatched_nodes)),
        parent_counts=(c1, c2, cp),
        parent_product_holds=cp == c1 * c2,
        factors_connected=connected,
        observer_counts=obs,
        recovered=bool((m1.unmatched_nodes or m2.unmatched_nodes) and not mp.unmatched_nodes),
        unmatched_recovery_expected=any(scf),
    )


__all__ = [
    "ObserverPlan", "ObservabilityVerdict", "OutputConnectivity", "ParentSccCover",
    "ProductRecoveryReport", "SpanningDeficiency", "UnmatchedCover", "augmented_matching_size",
    "check_observable", "plan_observers", "reaching_nodes",
    "verify_product_recovery",
]
