"""Command-line front end.

Exit codes: 0 success / observable, 3 structurally unobservable (a verdict),
2 bad input, 1 internal error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import warnings
from pathlib import Path

from . import report
from .errors import (
    CartobsError, DivergedEstimate, GraphError, NotNumericallyObservable, ParseError,
    StructureWarning,
)
from .formats import read_graph, to_dot, to_json_obj, write_graph
from .graph import DiGraph
from .numeric import cross_validate, observability_rank, realize_weights, simulate_estimation
from .observability import check_observable, plan_observers, verify_product_recovery
from .product import cartesian_product
from .structure import classify_parents

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_UNOBSERVABLE = 3

log = logging.getLogger("cartobs")


class InputError(Exception):
    pass


def _emit(obj: dict, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _parse_observers(g: DiGraph, text: str | None) -> list[int]:
    if not text:
        return []
    out = []
    for lbl in (t.strip() for t in text.split(",")):
        if not lbl:
            continue
        try:
            out.append(g.index(lbl))
        except KeyError:
            raise InputError(f"unknown observer label {lbl!r}") from None
    return out


def _parse_seeds(text: str) -> list[int]:
    try:
        if "-" in text and "," not in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad seed list {text!r}; use '0,1,2' or '0-9'") from None


def _parent_highlight(g: DiGraph) -> set[int]:
    return {v for comp in classify_parents(g).parent_sccs for v in comp}


def _table(rep: dict, out) -> None:
    gs, st, mt, pl = rep["graph"], rep["structure"], rep["matching"], rep["observer_plan"]
    out.write(f"nodes {gs['n']}  edges {gs['edges']}  connected {gs['connected']}\n\n")
    out.write("SCC  members\n")
    for i, comp in enumerate(st["components"]):
        out.write(f"{i:>3}  {', '.join(comp)}\n")
    cond = ", ".join(f"{a}->{b}" for a, b in st["condensation"]) or "-"
    out.write(f"condensation: {cond}\n")
    out.write("parent SCCs: " + ("; ".join("{" + ", ".join(c) + "}" for c in st["parent_sccs"]) or "-") + "\n")
    out.write("parent nodes: " + (", ".join(st["parent_nodes"]) or "-") + "\n\n")
    out.write(f"s-rank {mt['s_rank']}  unmatched: {', '.join(mt['unmatched_nodes']) or '-'}\n")
    if mt["cycle_family"] is not None:
        fam = "; ".join("(" + " ".join(c) + ")" for c in mt["cycle_family"])
        out.write(f"spanning cycle family: {fam}\n")
    if mt["contraction"] is not None:
        k = mt["contraction"]
        out.write(f"contraction: {{{', '.join(k['kappa'])}}} -> {{{', '.join(k['neighborhood'])}}}\n")
    out.write("\nobserver  reasons\n")
    for v, tags in pl["reasons"].items():
        desc = ", ".join(t["kind"] + (f"({t['component']})" if "component" in t else "") for t in tags)
        out.write(f"{v:>8}  {desc}\n")


def cmd_analyze(args) -> int:
    g = read_graph(args.graph)
    plan = plan_observers(g)
    rep = report.analysis_report(g, plan)
    if args.seeds:
        cv = cross_validate(g, plan.observers, _parse_seeds(args.seeds), args.tol)
        rep["numeric"] = report.cross_validation_section(g, cv)
    if args.dot:
        Path(args.dot).write_text(to_dot(g, highlight=_parent_highlight(g)))
    if args.format == "table":
        _table(rep, sys.stdout)
    else:
        _emit(rep, sys.stdout)
    return EXIT_OK


def cmd_product(args) -> int:
    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    p = cartesian_product(g1, g2)
    if args.output:
        write_graph(p.graph, args.output)
    else:
        _emit(to_json_obj(p.graph), sys.stdout)
    if args.dot:
        factors = {i: p.factor_labels(i) for i in range(p.graph.n)}
        Path(args.dot).write_text(to_dot(p.graph, factors, _parent_highlight(p.graph)))
    return EXIT_OK


def cmd_observers(args) -> int:
    g = read_graph(args.graph)
    plan = plan_observers(g)
    _emit({"schema_version": report.SCHEMA_VERSION, **report.plan_section(g, plan)}, sys.stdout)
    return EXIT_OK


def cmd_check(args) -> int:
    g = read_graph(args.graph)
    obs = _parse_observers(g, args.observers)
    verdict = check_observable(g, obs)
    _emit({"schema_version": report.SCHEMA_VERSION, **report.verdict_section(g, obs, verdict)},
          sys.stdout)
    return EXIT_OK if verdict.observable else EXIT_UNOBSERVABLE


def cmd_verify_product(args) -> int:
    g1, g2 = read_graph(args.g1), read_graph(args.g2)
    rep = verify_product_recovery(g1, g2)
    _emit({"schema_version": report.SCHEMA_VERSION, **report.recovery_section(g1, g2, rep)},
          sys.stdout)
    return EXIT_OK


def _observers_or_plan(g: DiGraph, text: str | None) -> list[int]:
    if text is None:
        return sorted(plan_observers(g).observers)
    return _parse_observers(g, text)


def cmd_numeric_check(args) -> int:
    g = read_graph(args.graph)
    obs = _observers_or_plan(g, args.observers)
    seeds = _parse_seeds(args.seeds)
    cv = cross_validate(g, obs, seeds, args.tol)
    out = {"schema_version": report.SCHEMA_VERSION, **report.cross_validation_section(g, cv)}
    r = realize_weights(g, obs, seeds[0])
    out["first_seed"] = report.rank_section(observability_rank(r, args.tol), r.spectral_radius)
    if cv.disagreements:
        log.warning("structural and numeric verdicts disagree for seeds %s", cv.disagreements)
    _emit(out, sys.stdout)
    return EXIT_OK if cv.structural_observable else EXIT_UNOBSERVABLE


def cmd_simulate(args) -> int:
    g = read_graph(args.graph)
    obs = _observers_or_plan(g, args.observers)
    r = realize_weights(g, obs, args.seed, scale_unstable=True)
    try:
        trace = simulate_estimation(
            r, trials=args.trials, steps=args.steps, x0_range=args.x0_range,
            process_std=args.process_std, meas_std=args.meas_std, seed=args.seed,
            window=args.window, reanchor=not args.no_reanchor, tolerance=args.tol,
        )
    except NotNumericallyObservable as exc:
        _emit({"schema_version": report.SCHEMA_VERSION, "error": str(exc)}, sys.stdout)
        return EXIT_UNOBSERVABLE
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step", "msee"])
            w.writerows(enumerate(trace.msee))
    out = {"schema_version": report.SCHEMA_VERSION, "observers": report.node_labels(g, obs),
           "spectral_radius": r.spectral_radius, **report.trace_section(trace)}
    _emit(out, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cartobs",
        description="Structural observability of directed networks and their Cartesian products.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="SCCs, parents, matching, contraction and observer plan")
    p.add_argument("graph")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--seeds", help="add a numeric cross-check for these seeds, e.g. 0-9")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--dot", help="also write a DOT file with parent SCCs colored")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("product", help="Cartesian product of two graphs")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("-o", "--output")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("observers", help="observer plan as JSON")
    p.add_argument("graph")
    p.set_defaults(func=cmd_observers)

    p = sub.add_parser("check", help="check an observer set")
    p.add_argument("graph")
    p.add_argument("--observers", required=True, help="comma-separated labels, e.g. '2|1,2|3'")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-product", help="recovery report for g1 □ g2")
    p.add_argument("g1")
    p.add_argument("g2")
    p.set_defaults(func=cmd_verify_product)

    p = sub.add_parser("numeric-check", help="structural vs numeric rank over seeds")
    p.add_argument("graph")
    p.add_argument("--observers", help="default: the planned observers")
    p.add_argument("--seeds", default="0-9")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_numeric_check)

    p = sub.add_parser("simulate", help="Monte-Carlo least-squares estimation")
    p.add_argument("graph")
    p.add_argument("--observers", help="default: the planned observers")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--window", type=int, help="measurements per inversion (default n)")
    p.add_argument("--no-reanchor", action="store_true",
                   help="propagate the first estimate instead of re-solving every step")
    p.add_argument("--x0-range", type=float, default=5.0)
    p.add_argument("--process-std", type=float, default=0.05)
    p.add_argument("--meas-std", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--csv", help="write step,msee rows here")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    logging.captureWarnings(True)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", StructureWarning)
            return args.func(args)
    except (ParseError, GraphError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DivergedEstimate, CartobsError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
