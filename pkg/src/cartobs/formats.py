"""Reading and writing graphs: canonical JSON, edge-list text and DOT."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GraphError, ParseError
from .graph import DiGraph, build_graph


def to_json_obj(g: DiGraph) -> dict:
    return {"nodes": list(g.labels), "edges": [list(e) for e in g.label_edges()]}


def dumps(g: DiGraph) -> str:
    return json.dumps(to_json_obj(g), indent=2)


def loads_json(text: str, source: str | None = None) -> DiGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source) from None
    if not isinstance(obj, dict) or "nodes" not in obj:
        raise ParseError('expected an object with a "nodes" array', source=source)
    nodes = obj["nodes"]
    edges = obj.get("edges", [])
    if not isinstance(nodes, list) or not isinstance(edges, list):
        raise ParseError('"nodes" and "edges" must be arrays', source=source)
    if not nodes:
        raise ParseError("empty node list", source=source)
    for lbl in nodes:
        if isinstance(lbl, bool) or not isinstance(lbl, (str, int)):
            raise ParseError(f"node label must be a string, got {lbl!r}", source=source)
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError(f"edge must be a 2-element array, got {e!r}", source=source)
    try:
        return build_graph(nodes, edges)
    except GraphError as exc:
        raise ParseError(str(exc), source=source) from exc


def loads_edgelist(text: str, source: str | None = None) -> DiGraph:
    """Parse ``from to`` lines; ``#`` starts a comment.

    A line holding a single token declares an isolated node. Node order is
    order of first appearance.
    """
    labels: dict[str, None] = {}
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) > 2:
            col = raw.index(tokens[2]) + 1
            raise ParseError(f"expected 'from to', got {len(tokens)} tokens", lineno, col, source)
        for tok in tokens:
            labels.setdefault(tok)
        if len(tokens) == 2:
            pair = (tokens[0], tokens[1])
            if pair in seen:
                raise ParseError(
                    f"duplicate edge {pair!r} (first on line {seen[pair]})", lineno, 1, source
                )
            seen[pair] = lineno
            edges.append(pair)
    if not labels:
        raise ParseError("empty node list", source=source)
    return build_graph(list(labels), edges)


def loads(text: str, source: str | None = None) -> DiGraph:
    """Parse either format; text whose first non-blank character is ``{`` is JSON."""
    if text.lstrip().startswith("{"):
        return loads_json(text, source)
    return loads_edgelist(text, source)


def read_graph(path) -> DiGraph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), source=str(path)) from None
    return loads(text, source=str(path))


def write_graph(g: DiGraph, path) -> None:
    Path(path).write_text(dumps(g) + "\n")


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: DiGraph, factors: dict[int, tuple[str, str]] | None = None,
           highlight: set[int] | frozenset[int] = frozenset(), name: str = "G") -> str:
    """Render ``g`` as a Graphviz digraph.

    ``factors`` maps node index to its (factor-1, factor-2) labels and adds
    ``factor1``/``factor2`` attributes; ``highlight`` nodes are filled blue.
    """
    lines = [f"digraph {_dot_quote(name)} {{"]
    for i, lbl in enumerate(g.labels):
        attrs = [f"label={_dot_quote(lbl)}"]
        if factors is not None:
            f1, f2 = factors[i]
            attrs += [f"factor1={_dot_quote(f1)}", f"factor2={_dot_quote(f2)}"]
        if i in highlight:
            attrs += ["style=filled", 'fillcolor="lightblue"']
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for a, b in g.sorted_edges():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
