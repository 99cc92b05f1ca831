"""JSON-ready reports shared by the CLI and tests. Only JSON output is schema stable."""

from __future__ import annotations

import math
from dataclasses import asdict

from .graph import DiGraph, is_connected
from .matching import extract_cycle_family, find_contraction, maximum_matching
from .numeric import CrossValidationReport, EstimationTrace, RankResult
from .observability import ObservabilityVerdict, ObserverPlan, OutputConnectivity, ProductRecoveryReport
from .structure import classify_parents, scc_decompose

SCHEMA_VERSION = 1


def node_labels(g: DiGraph, nodes) -> list[str]:
    return [g.label(v) for v in sorted(nodes)]


def _float(x: float):
    return x if math.isfinite(x) else None


def graph_summary(g: DiGraph) -> dict:
    return {"n": g.n, "edges": len(g.edges), "connected": is_connected(g)}


def structure_section(g: DiGraph) -> dict:
    d = scc_decompose(g)
    parents = classify_parents(g, d)
    return {
        "components": [node_labels(g, c) for c in d.components],
        "condensation": sorted([a, b] for a, b in d.condensation),
        "parent_sccs": [node_labels(g, c) for c in parents.parent_sccs],
        "parent_nodes": node_labels(g, parents.parent_nodes),
        "parent_count": parents.count,
    }


def matching_section(g: DiGraph) -> dict:
    m = maximum_matching(g)
    cycles = extract_cycle_family(g, m)
    kappa = find_contraction(g, m)
    return {
        "s_rank": m.s_rank,
        "matched_links": [[g.label(a), g.label(b)] for a, b in sorted(m.matched_links)],
        "unmatched_nodes": node_labels(g, m.unmatched_nodes),
        "spanning_cycle_family": cycles is not None,
        "cycle_family": None if cycles is None else [[g.label(v) for v in c] for c in cycles],
        "contraction": None if kappa is None else {
            "kappa": node_labels(g, kappa.kappa),
            "neighborhood": node_labels(g, kappa.neighborhood),
        },
    }


def plan_section(g: DiGraph, plan: ObserverPlan) -> dict:
    return {
        "observers": node_labels(g, plan.observers),
        "reasons": {g.label(v): [t.to_json() for t in tags] for v, tags in plan.reasons.items()},
        "num_unmatched_covered": plan.num_unmatched_covered,
        "num_parent_sccs_covered": plan.num_parent_sccs_covered,
    }


def verdict_section(g: DiGraph, observers, verdict: ObservabilityVerdict) -> dict:
    failed = verdict.failed_condition
    if failed is None:
        cond = None
    elif isinstance(failed, OutputConnectivity):
        cond = {"kind": "output_connectivity", "witness": g.label(failed.witness)}
    else:
        cond = {"kind": "spanning_deficiency", "uncovered": failed.uncovered}
    return {"observers": node_labels(g, observers), "observable": verdict.observable,
            "failed_condition": cond}


def cross_validation_section(g: DiGraph, rep: CrossValidationReport) -> dict:
    return {
        "observers": node_labels(g, rep.observers),
        "structural_observable": rep.structural_observable,
        "checks": [asdict(c) for c in rep.checks],
        "agreements": rep.agreements,
        "total": len(rep.checks),
        "disagreements": rep.disagreements,
    }


def rank_section(r: RankResult, spectral_radius: float) -> dict:
    return {"rank": r.rank, "condition_number": _float(r.condition_number),
            "spectral_radius": spectral_radius}


def trace_section(t: EstimationTrace) -> dict:
    return asdict(t)


def recovery_section(g1: DiGraph, g2: DiGraph, rep: ProductRecoveryReport) -> dict:
    out = asdict(rep)
    out["factor_unmatched"] = [node_labels(g1, rep.factor_unmatched[0]),
                               node_labels(g2, rep.factor_unmatched[1])]
    # product labels are "a|b" in row-major order
    out["product_unmatched"] = [
        f"{g1.label(v // g2.n)}|{g2.label(v % g2.n)}" for v in rep.product_unmatched
    ]
    out["parent_counts"] = dict(zip(("g1", "g2", "product"), rep.parent_counts))
    out["observer_counts"] = dict(zip(("g1", "g2", "product"), rep.observer_counts))
    out["assumptions_hold"] = rep.assumptions_hold
    return out


def analysis_report(g: DiGraph, plan: ObserverPlan) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "graph": graph_summary(g),
        "structure": structure_section(g),
        "matching": matching_section(g),
        "observer_plan": plan_section(g, plan),
    }
