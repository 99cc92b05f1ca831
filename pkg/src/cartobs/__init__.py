"""Structural observability analysis of directed networks and their Cartesian products."""

from .errors import CartobsError
from .graph import DiGraph, NodeId, adjacency_pattern, build_graph, is_connected
from .matching import (
    Contraction, MaximumMatching, extract_cycle_family, find_contraction,
    has_spanning_cycle_family, maximum_matching,
)
from .observability import (
    ObservabilityVerdict, ObserverPlan, check_observable, plan_observers, verify_product_recovery,
)
from .product import ProductGraph, cartesian_product, is_isomorphic_swap
from .structure import ParentClassification, SccDecomposition, classify_parents, count_parents, scc_decompose

__version__ = "0.1.0"

__all__ = [
    "CartobsError", "Contraction", "DiGraph", "MaximumMatching", "NodeId", "ObservabilityVerdict",
    "ObserverPlan", "ParentClassification", "ProductGraph", "SccDecomposition", "adjacency_pattern",
    "build_graph", "cartesian_product", "check_observable", "classify_parents", "count_parents",
    "extract_cycle_family", "find_contraction", "has_spanning_cycle_family", "is_connected",
    "is_isomorphic_swap", "maximum_matching", "plan_observers", "scc_decompose",
    "verify_product_recovery",
]
