"""Command-line surface.

Subcommands: solve, transversal, verify, oracle-max, connectivity, menger,
bounds, gen.  Exit codes: 0 success, 1 solver shortfall (a valid but
sub-target matching; mathematically meaningful, not an error), 2 input
error, 3 budget exhaustion.  JSON output is canonical (sorted keys), so
identical configurations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import bounds as bounds_mod
from . import connectivity as conn_mod
from . import gen as gen_mod
from . import golden as golden_mod
from . import menger as menger_mod
from . import oracle as oracle_mod
from . import switching as switching_mod
from .budget import SearchBudget
from .core import (
    RainbowMatching,
    Edge,
    greedy_rainbow_matching,
    read_edge_list,
    verify_rainbow_matching,
    write_edge_list,
)
from .errors import BudgetExceeded, NoVerifiedSetFound, RainbowError
from .latin import extract_transversal, parse_latin, square_to_graph

EXIT_OK = 0
EXIT_SHORTFALL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation; the seed pins every generated instance and
    identical configs yield byte-identical JSON reports."""

    subcommand: str
    input_path: str | None
    algorithm: str | None
    seed: int
    depth_cap: int | None
    node_limit: int
    time_limit: float
    output_format: str
    flags: frozenset[str]
    args: argparse.Namespace

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        flags = {
            name
            for name in ("trace", "simple", "lp", "edge_disjoint")
            if getattr(args, name, False)
        }
        return cls(
            subcommand=args.subcommand,
            input_path=getattr(args, "file", None) or getattr(args, "graph", None),
            algorithm=getattr(args, "algorithm", None),
            seed=getattr(args, "seed", 0),
            depth_cap=getattr(args, "depth_cap", None),
            node_limit=getattr(args, "node_limit", 10_000_000),
            time_limit=getattr(args, "time_limit", 30.0),
            output_format=getattr(args, "format", "json"),
            flags=frozenset(flags),
            args=args,
        )


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        for key in sorted(payload):
            sys.stdout.write(f"{key}: {payload[key]}\n")


def _matching_payload(matching: RainbowMatching) -> list[dict]:
    return [{"c": e.c, "x": e.x, "y": e.y} for e in matching]


def _budget(args) -> SearchBudget:
    return SearchBudget(
        node_limit=getattr(args, "node_limit", 10_000_000),
        time_limit=getattr(args, "time_limit", 30.0),
    )


def _cmd_solve(args) -> int:
    graph = read_edge_list(_read(args.file))
    target = graph.colour_count
    trace_payload = None
    if args.algorithm == "greedy":
        matching = greedy_rainbow_matching(graph)
    elif args.algorithm == "switching":
        matching, trace = switching_mod.solve_switching_engine(
            graph, depth_cap=args.depth_cap, budget=_budget(args)
        )
        trace_payload = {
            "augmentations": trace.augmentations,
            "rotations": trace.rotations,
        }
    elif args.algorithm == "golden":
        matching, gtrace = golden_mod.golden_solve(graph, budget=_budget(args))
        trace_payload = {
            "levels": [
                {"n": lv.n, "method": lv.method, "m0": lv.m0_size, "m1": lv.m1_size}
                for lv in gtrace.levels
            ]
        }
    elif args.algorithm == "oracle":
        result = oracle_mod.exact_max_rainbow_matching(graph, budget=_budget(args))
        matching = result.matching
    else:
        raise ValueError(f"unknown algorithm {args.algorithm!r}")
    verified = bool(verify_rainbow_matching(graph, matching))
    payload = {
        "instance": args.file,
        "algorithm": args.algorithm,
        "size": matching.size,
        "target": target,
        "matching": _matching_payload(matching),
        "verified": verified,
    }
    if args.algorithm == "oracle":
        payload["optimal"] = result.optimal
    if args.trace and trace_payload is not None:
        payload["trace"] = trace_payload
    _emit(payload, args.format)
    if args.algorithm == "oracle" and not result.optimal:
        return EXIT_BUDGET
    return EXIT_OK if matching.size == target else EXIT_SHORTFALL


def _cmd_transversal(args) -> int:
    rect = parse_latin(_read(args.file))
    graph = square_to_graph(rect)
    result = oracle_mod.exact_max_rainbow_matching(graph, budget=_budget(args))
    if not result.optimal:
        return EXIT_BUDGET
    cells = extract_transversal(rect, result.matching)
    if args.format == "json":
        payload = {
            "instance": args.file,
            "size": len(cells),
            "target": rect.rows,
            "cells": [list(cell) for cell in cells],
        }
        _emit(payload, "json")
    else:
        for row, col, sym in cells:
            sys.stdout.write(f"({row},{col},{rect.token(sym)})\n")
        sys.stdout.write(f"size: {len(cells)}\n")
    return EXIT_OK if len(cells) == rect.rows else EXIT_SHORTFALL


def _cmd_verify(args) -> int:
    graph = read_edge_list(_read(args.graph))
    edges = []
    for ln in _read(args.matching).splitlines():
        ln = ln.split("#", 1)[0].strip()
        if ln:
            x, y, c = (int(t) for t in ln.split())
            edges.append(Edge(x, y, c))
    verdict = verify_rainbow_matching(graph, RainbowMatching(tuple(edges)))
    _emit(
        {"valid": verdict.ok, "reason": verdict.reason, "size": len(edges)},
        args.format,
    )
    return EXIT_OK if verdict.ok else EXIT_SHORTFALL


def _cmd_oracle_max(args) -> int:
    graph = read_edge_list(_read(args.file))
    result = oracle_mod.exact_max_rainbow_matching(graph, budget=_budget(args))
    payload = {
        "instance": args.file,
        "algorithm": "oracle-max",
        "size": result.size,
        "target": graph.colour_count,
        "matching": _matching_payload(result.matching),
        "verified": bool(verify_rainbow_matching(graph, result.matching)),
        "optimal": result.optimal,
        "nodes": result.nodes,
    }
    _emit(payload, args.format)
    if not result.optimal:
        return EXIT_BUDGET
    return EXIT_OK if result.size == graph.colour_count else EXIT_SHORTFALL


def _cmd_connectivity(args) -> int:
    D = gen_mod.generate_proper_digraph(args.vertices, args.out_degree, args.seed)
    if args.op == "ball":
        t0, ball = conn_mod.low_expansion_ball(D, args.vertex, args.epsilon)
        payload = {"op": "ball", "t0": t0, "ball": sorted(ball)}
    elif args.op == "twohop":
        derived, cert = conn_mod.build_two_hop_digraph(D, args.m, budget=_budget(args))
        payload = {
            "op": "twohop",
            "arcs": [[a.tail, a.head] for a in derived.arcs],
            "certified": cert.validate(D),
            "min_out_degree": derived.min_out_degree(),
            "base_min_out_degree": D.min_out_degree(),
        }
    elif args.op == "kdset":
        try:
            result = conn_mod.find_kd_connected_set(
                D, args.k, args.epsilon, mode=args.mode, budget=_budget(args)
            )
        except NoVerifiedSetFound as exc:
            _emit({"op": "kdset", "connected": False, "reason": str(exc)}, args.format)
            return EXIT_SHORTFALL
        payload = {
            "op": "kdset",
            "vertices": sorted(result.vertices),
            "verdict": result.verdict.mode,
            "connected": result.verdict.connected,
            "diameter_bound": result.diameter_bound,
            "target_size": str(result.target_size),
        }
    elif args.op == "through-path":
        anchors = [int(t) for t in args.anchors.split(",")]
        path = conn_mod.rainbow_path_through(
            D,
            range(D.vertex_count),
            anchors,
            frozenset(),
            args.d,
            budget=_budget(args),
        )
        payload = {
            "op": "through-path",
            "path": [[a.tail, a.head, a.label] for a in path],
        }
    else:
        raise ValueError(f"unknown connectivity op {args.op!r}")
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_menger(args) -> int:
    D = menger_mod.build_counterexample(args.k, args.m)
    if args.simple:
        D = menger_mod.subdivide_to_simple(D)  # source/sink ids survive
    u, v = 0, args.m
    payload = {
        "k": args.k,
        "m": args.m,
        "property_I": menger_mod.verify_property_I(D, u, v, args.k, budget=_budget(args)),
        "property_II": menger_mod.verify_property_II(D, u, v, budget=_budget(args)),
        "path_count": len(menger_mod.rainbow_st_paths(D, u, v, budget=_budget(args))),
    }
    if args.lp:
        lp = menger_mod.fractional_menger(D, u, v)
        payload["lp"] = {
            "primal_value": str(lp.primal_value),
            "dual_value": str(lp.dual_value),
            "exact": lp.exact,
            "gap": lp.duality_gap,
        }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    eps = Fraction(args.epsilon)
    reports = bounds_mod.threshold_table(
        eps,
        m=args.m,
        k=args.k,
        k1=Fraction(args.k1) if args.k1 is not None else None,
    )
    payload = {
        "epsilon": str(eps),
        "thresholds": [
            {
                "name": r.name,
                "value": None if r.value is None else str(r.value),
                "log10": r.log10,
                "exact": r.exact,
                "feasible_at_desk_scale": r.feasible_at_desk_scale,
            }
            for r in reports
        ],
    }
    _emit(payload, args.format)
    return EXIT_OK


def _cmd_gen(args) -> int:
    graph = gen_mod.generate_instance(
        kind=args.kind,
        n=args.n,
        class_size=args.class_size,
        edge_disjoint=args.edge_disjoint,
        seed=args.seed,
        left_size=args.left,
        right_size=args.right,
    )
    text = write_edge_list(graph)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowmatch",
        description="Rainbow matchings, Latin square transversals, and the "
        "switching/connectivity toolbox around them.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=("text", "json"), default="json")
        p.add_argument("--node-limit", type=int, default=10_000_000, dest="node_limit")
        p.add_argument("--time-limit", type=float, default=30.0, dest="time_limit")

    p = sub.add_parser("solve", help="solve an edge-list instance")
    p.add_argument("file")
    p.add_argument(
        "--algorithm",
        choices=("greedy", "switching", "golden", "oracle"),
        default="switching",
    )
    p.add_argument("--depth-cap", type=int, default=None, dest="depth_cap")
    p.add_argument("--trace", action="store_true")
    common(p)

    p = sub.add_parser("transversal", help="maximum partial transversal of a Latin grid")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("verify", help="verify a matching file against a graph")
    p.add_argument("graph")
    p.add_argument("matching")
    common(p)

    p = sub.add_parser("oracle-max", help="exact maximum rainbow matching")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("connectivity", help="connectivity toolbox on a seeded digraph")
    p.add_argument("--op", choices=("ball", "twohop", "kdset", "through-path"), required=True)
    p.add_argument("--vertices", type=int, default=40)
    p.add_argument("--out-degree", type=int, default=6, dest="out_degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--mode", default="uncoloured")
    p.add_argument("--anchors", default="0,1")
    common(p)

    p = sub.add_parser("menger", help="counterexample family and fractional duality")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lp", action="store_true")
    p.add_argument("--simple", action="store_true")
    common(p)

    p = sub.add_parser("bounds", help="threshold formula table")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--k1", default=None)
    common(p)

    p = sub.add_parser("gen", help="emit a seeded instance as an edge list")
    p.add_argument("--kind", choices=("random", "latin"), default="random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class-size", type=int, default=0, dest="class_size")
    p.add_argument("--left", type=int, default=None)
    p.add_argument("--right", type=int, default=None)
    p.add_argument("--edge-disjoint", action="store_true", dest="edge_disjoint")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    common(p, fmt=False)

    return parser


_HANDLERS = {
    "solve": _cmd_solve,
    "transversal": _cmd_transversal,
    "verify": _cmd_verify,
    "oracle-max": _cmd_oracle_max,
    "connectivity": _cmd_connectivity,
    "menger": _cmd_menger,
    "bounds": _cmd_bounds,
    "gen": _cmd_gen,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    config = RunConfig.from_args(parser.parse_args(argv))
    handler = _HANDLERS[config.subcommand]
    try:
        return handler(config.args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except (RainbowError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
