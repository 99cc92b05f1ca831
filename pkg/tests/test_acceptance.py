"""Exit criteria. Each test prints one PASS/FAIL line in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import math
import random
import time
import warnings

import numpy as np
import pytest

from cartobs.errors import StructureWarning, ZeroStructure
from cartobs.graph import build_graph, is_connected
from cartobs.matching import find_contraction, has_spanning_cycle_family, maximum_matching
from cartobs.numeric import cross_validate, observability_rank, realize_weights, simulate_estimation
from cartobs.observability import (
    OutputConnectivity, augmented_matching_size, check_observable, plan_observers,
)
from cartobs.product import cartesian_product
from cartobs.structure import classify_parents, count_parents, scc_decompose

import oracles
from conftest import fixture_graphs, random_connected, random_digraph, random_with_cycle_family

pytestmark = pytest.mark.acceptance


def note(request, text):
    request.node.user_properties.append(("detail", text))


@pytest.fixture(scope="module")
def worked_example():
    g1 = build_graph([1, 2, 3], [(1, 2), (3, 2)])
    g2 = build_graph(
        [1, 2, 3, 4, 5, 6],
        [(1, 1), (2, 2), (5, 5), (6, 6), (3, 4), (4, 3), (2, 1), (2, 3), (5, 4), (5, 6)],
    )
    return g1, g2


@pytest.mark.criterion(1, "worked example: n=18, no unmatched, 3=1x3 parents, 3 observers")
def test_golden_worked_example(worked_example, request):
    start = time.perf_counter()
    g1, g2 = worked_example
    assert is_connected(g2) and has_spanning_cycle_family(g2)
    assert {frozenset(g2.label(v) for v in c) for c in classify_parents(g2).parent_sccs} == {
        frozenset({"1"}), frozenset({"3", "4"}), frozenset({"6"})}
    gc = cartesian_product(g1, g2).graph
    assert gc.n == 18
    assert maximum_matching(gc).unmatched_nodes == frozenset()
    assert count_parents(g1) == 1 and count_parents(g2) == 3
    assert count_parents(gc) == 3 == count_parents(g1) * count_parents(g2)
    plan = plan_observers(gc)
    assert len(plan.observers) == 3
    paper_obs = [gc.index(x) for x in ("2|1", "2|3", "2|6")]
    assert check_observable(gc, paper_obs).observable
    elapsed = time.perf_counter() - start
    note(request, f"plan={sorted(gc.label(v) for v in plan.observers)}")
    assert elapsed < 1.0


@pytest.mark.criterion(2, "numeric rank 18 on >=9/10 seeds at tol 1e-8")
def test_numeric_rank(worked_example, request):
    start = time.perf_counter()
    g1, g2 = worked_example
    gc = cartesian_product(g1, g2).graph
    obs = [gc.index(x) for x in ("2|1", "2|3", "2|6")]
    ranks = [observability_rank(realize_weights(gc, obs, seed), tolerance=1e-8).rank
             for seed in range(10)]
    elapsed = time.perf_counter() - start
    full = sum(r == 18 for r in ranks)
    note(request, f"full rank on {full}/10 seeds")
    assert full >= 9
    assert elapsed < 5.0


@pytest.mark.criterion(3, "cycle family in one factor empties the product's unmatched set (500 pairs)")
def test_cycle_family_recovers_unmatched(request):
    start = time.perf_counter()
    rng = random.Random(3001)
    pairs = recovered_cases = 0
    while pairs < 500:
        with_family = random_with_cycle_family(rng, rng.randint(1, 6))
        other = random_connected(rng, rng.randint(1, 6))
        g1, g2 = (with_family, other) if rng.random() < 0.5 else (other, with_family)
        assert is_connected(g1) and is_connected(g2)
        assert has_spanning_cycle_family(g1) or has_spanning_cycle_family(g2)
        assert not maximum_matching(cartesian_product(g1, g2).graph).unmatched_nodes
        recovered_cases += bool(maximum_matching(other).unmatched_nodes)
        pairs += 1
    elapsed = time.perf_counter() - start
    note(request, f"{pairs} pairs, {recovered_cases} with an unmatched factor")
    assert elapsed < 30.0


@pytest.mark.criterion(4, "parent count of product = product of factor counts (500 pairs)")
def test_parent_count_product(request):
    start = time.perf_counter()
    rng = random.Random(4001)
    for _ in range(500):
        g1 = random_connected(rng, rng.randint(1, 6))
        g2 = random_connected(rng, rng.randint(1, 6))
        assert count_parents(cartesian_product(g1, g2).graph) == count_parents(g1) * count_parents(g2)
    elapsed = time.perf_counter() - start
    note(request, "500/500")
    assert elapsed < 30.0


@pytest.mark.criterion(5, "oracle agreement on 2000 digraphs n<=6 (SCC, s-rank, contraction, cover)")
def test_oracle_equivalence(request):
    start = time.perf_counter()
    rng = random.Random(5001)
    counts = dict(scc=0, s_rank=0, contraction=0, cover=0, coverable=0)
    for _ in range(2000):
        g = random_digraph(rng, rng.randint(1, 6))
        d = scc_decompose(g)
        assert set(map(frozenset, d.components)) == oracles.scc_partition(g.n, g.edges)
        counts["scc"] += 1
        m = maximum_matching(g)
        assert m.s_rank == oracles.max_link_set(g.n, g.edges)
        counts["s_rank"] += 1
        assert (find_contraction(g, m) is not None) == oracles.has_contraction(g.n, g.edges) \
            == (m.s_rank < g.n)
        counts["contraction"] += 1
        obs = {v for v in range(g.n) if rng.random() < 0.3}
        coverable = oracles.cycle_path_cover(g.n, g.edges, obs)
        assert (augmented_matching_size(g, obs) == g.n) == coverable
        counts["cover"] += 1
        counts["coverable"] += coverable
    elapsed = time.perf_counter() - start
    note(request, " ".join(f"{k}={v}" for k, v in counts.items()))
    assert elapsed < 120.0


@pytest.mark.criterion(6, "planned observers pass the checker; dropping a parent-only observer fails")
def test_plan_check_consistency(request):
    graphs = fixture_graphs()
    dropped = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StructureWarning)
        for name, g in graphs.items():
            plan = plan_observers(g)
            assert check_observable(g, plan.observers).observable, name
            for v in plan.parent_only():
                verdict = check_observable(g, plan.observers - {v})
                assert isinstance(verdict.failed_condition, OutputConnectivity), (name, v)
                dropped += 1
    note(request, f"{len(graphs)} graphs, {dropped} removals")


@pytest.mark.criterion(7, "parent nodes are unmatched on every fixture")
def test_parent_nodes_unmatched(request):
    graphs = fixture_graphs()
    total = 0
    for name, g in graphs.items():
        parents = set(classify_parents(g).parent_nodes)
        assert parents <= maximum_matching(g).unmatched_nodes, name
        total += len(parents)
    note(request, f"{len(graphs)} graphs, {total} parent nodes")


@pytest.mark.criterion(8, "MSEE finite and bounded (final quartile <= 3x second quartile)")
def test_msee_bounded(worked_example, request):
    start = time.perf_counter()
    g1, g2 = worked_example
    gc = cartesian_product(g1, g2).graph
    obs = [gc.index(x) for x in ("2|1", "2|3", "2|6")]
    r = realize_weights(gc, obs, seed=0, scale_unstable=True)
    assert r.spectral_radius > 1
    trace = simulate_estimation(r, trials=100, steps=100, seed=0)
    msee = np.array(trace.msee)
    assert np.all(np.isfinite(msee))
    q = len(msee) // 4
    second, final = msee[q:2 * q].mean(), msee[3 * q:].mean()
    elapsed = time.perf_counter() - start
    note(request, f"rho={r.spectral_radius:.2f} ratio={final / second:.2f}")
    assert final <= 3 * second
    assert elapsed < 30.0


def _cross_validation_triples():
    graphs = fixture_graphs()
    rng = random.Random(9001)
    triples = []
    names = sorted(graphs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", StructureWarning)
        plans = {k: sorted(plan_observers(g).observers) for k, g in graphs.items()}
    for k in range(50):
        name = names[k % len(names)] if k < len(names) else rng.choice(names)
        g = graphs[name]
        plan = plans[name]
        kind = k % 3
        if kind == 0:
            obs = plan
        elif kind == 1 and len(plan) > 1:
            obs = plan[:-1]
        else:
            obs = sorted(rng.sample(range(g.n), rng.randint(0, g.n)))
        triples.append((name, g, obs, 1000 + k))
    return triples


@pytest.mark.criterion(9, "structural verdict = full numeric rank on >=95% of 50 triples")
def test_cross_validation(request):
    start = time.perf_counter()
    triples = _cross_validation_triples()
    agree = unobservable = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ZeroStructure)
        for name, g, obs, seed in triples:
            rep = cross_validate(g, obs, [seed], tolerance=1e-8)
            agree += rep.agreements
            unobservable += not rep.structural_observable
    elapsed = time.perf_counter() - start
    note(request, f"{agree}/{len(triples)} agree, {unobservable} structurally unobservable")
    assert len(triples) == 50 and unobservable >= 5
    assert agree >= 0.95 * len(triples)
    assert elapsed < 60.0


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
