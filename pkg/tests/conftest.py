from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from cartobs.fixtures import (
    contraction_factor, cycle_family_factor, directed_cycle, directed_path, fig3_pair,
    star_into_hub,
)
from cartobs.graph import DiGraph, is_connected, weak_components
from cartobs.product import cartesian_product


def random_digraph(rng: random.Random, n: int, p: float | None = None,
                   loops: bool = True) -> DiGraph:
    p = rng.uniform(0.1, 0.7) if p is None else p
    edges = [(a, b) for a in range(n) for b in range(n) if (a != b or loops) and rng.random() < p]
    return DiGraph.from_indices([str(i + 1) for i in range(n)], edges)


def connect(rng: random.Random, g: DiGraph) -> DiGraph:
    """Join weak components with randomly oriented links."""
    comps = weak_components(g)
    if len(comps) <= 1:
        return g
    edges = set(g.edges)
    for prev, cur in zip(comps, comps[1:]):
        a, b = rng.choice(prev), rng.choice(cur)
        edges.add((a, b) if rng.random() < 0.5 else (b, a))
    return DiGraph.from_indices(g.labels, edges)


def random_connected(rng: random.Random, n: int) -> DiGraph:
    return connect(rng, random_digraph(rng, n))


def random_with_cycle_family(rng: random.Random, n: int) -> DiGraph:
    perm = list(range(n))
    rng.shuffle(perm)
    extra = random_digraph(rng, n, p=rng.uniform(0.0, 0.4))
    edges = set(extra.edges) | {(i, perm[i]) for i in range(n)}
    return connect(rng, DiGraph.from_indices(extra.labels, edges))


@st.composite
def digraphs(draw, min_n=1, max_n=6, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(n)]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs)))
    g = DiGraph.from_indices([str(i + 1) for i in range(n)], edges)
    if connected and not is_connected(g):
        comps = weak_components(g)
        extra = {(p[0], c[0]) for p, c in zip(comps, comps[1:])}
        g = DiGraph.from_indices(g.labels, set(edges) | extra)
    return g


def fixture_graphs() -> dict[str, DiGraph]:
    g1, g2 = contraction_factor(), cycle_family_factor()
    f3a, f3b = fig3_pair()
    out = {
        "g1": g1, "g2": g2, "gc": cartesian_product(g1, g2).graph,
        "fig3_a": f3a, "fig3_b": f3b, "fig3_product": cartesian_product(f3a, f3b).graph,
        "star4": star_into_hub(4), "cycle5": directed_cycle(5), "path4": directed_path(4),
        "k1_loop": DiGraph.from_indices(["a"], [(0, 0)]),
        "k1": DiGraph.from_indices(["a"], []),
    }
    rng = random.Random(20240611)
    for i in range(40):
        out[f"random{i}"] = random_connected(rng, rng.randint(2, 8))
    return out


@pytest.fixture(scope="session")
def paper():
    g1, g2 = contraction_factor(), cycle_family_factor()
    p = cartesian_product(g1, g2)
    return {"g1": g1, "g2": g2, "product": p, "gc": p.graph,
            "observers": [p.graph.index(x) for x in ("2|1", "2|3", "2|6")]}


@pytest.fixture(scope="session")
def fixtures():
    return fixture_graphs()


_acceptance_lines: list[str] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    number, title = mark.args
    detail = dict(item.user_properties).get("detail", "")
    status = "PASS" if rep.passed else "FAIL"
    _acceptance_lines.append(f"AC{number} {status}  {title}  [{rep.duration:.2f}s] {detail}".rstrip())


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
