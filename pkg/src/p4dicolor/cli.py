"""Command-line interface: ``p4dicolor <subcommand> ...``.

Exit codes: 0 success, 1 I/O or parse error (or an invalid colouring in
``verify-coloring``), 2 when the input contains the forbidden pattern.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from . import generators
from .dicolor import DicolorOptions, InvalidColoring, NotHFree, budget, certify, dicolor_forbidding
from .digraph import OrientedGraph, scc
from .graphio import ParseError, graph_digest, parse_coloring, parse_graph, serialize_coloring, serialize_graph
from .oracle import BudgetExceeded, exact_dichromatic_number
from .patterns import PatternId, clique_number, find_pattern
from .structure import NotDipolar, build_dipolar_set, path_minimizing_closed_tournament, verify_dipolar

SEED_ENV = "P4DICOLOR_SEED"


@dataclass
class ResultRecord:
    command: str
    input: str | None = None
    digest: str | None = None
    pattern: str | None = None
    omega: int | None = None
    ell: int | None = None
    colors_used: int | None = None
    budget: int | None = None
    certificate: str | None = None
    seconds: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> OrientedGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise _Exit(1, f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(text)
    except ParseError as exc:
        raise _Exit(1, f"{path}: {exc}") from None


def _nontrivial_components(g: OrientedGraph):
    for comp in scc(g).components:
        if len(comp) > 1:
            yield g.induced(comp)


def _witness_details(exc: NotHFree) -> dict[str, Any]:
    w = exc.witness
    return {"witness": list(w.vertices) if w else None, "witness_pattern": w.pattern.cli_name if w else None}


def cmd_omega(args, rec: ResultRecord, g: OrientedGraph) -> int:
    rec.omega = clique_number(g)
    return 0


def cmd_scc(args, rec: ResultRecord, g: OrientedGraph) -> int:
    rec.details["components"] = [sorted(c) for c in scc(g).components]
    return 0


def cmd_free(args, rec: ResultRecord, g: OrientedGraph) -> int:
    h = PatternId.parse(args.pattern)
    rec.pattern = h.cli_name
    w = find_pattern(g, h)
    rec.details["free"] = w is None
    if w is not None:
        rec.details["witness"] = list(w.vertices)
        return 2
    return 0


def cmd_closed_tournament(args, rec: ResultRecord, g: OrientedGraph) -> int:
    rec.omega = clique_number(g)
    found = []
    for sub, labels in _nontrivial_components(g):
        ct = path_minimizing_closed_tournament(sub, args.cap)
        found.append({"k": sorted(labels[v] for v in ct.k), "p": [labels[v] for v in ct.p]})
    rec.details["closed_tournaments"] = found
    if found:
        rec.ell = len(found[0]["p"])
    return 0


def cmd_dipolar(args, rec: ResultRecord, g: OrientedGraph) -> int:
    h = PatternId.parse(args.pattern)
    rec.pattern = h.cli_name
    rec.omega = clique_number(g)
    target = h.reversed() if h is PatternId.Q4_PRIME else h
    out = []
    for sub, labels in _nontrivial_components(g):
        ct = path_minimizing_closed_tournament(sub)
        try:
            dip, _ = build_dipolar_set(sub, ct, target if target is h else None)
        except NotDipolar as exc:
            w = exc.witness
            rec.details["witness"] = [labels[v] for v in w.vertices] if w else None
            return 2
        out.append(
            {
                "s_plus": sorted(labels[v] for v in dip.s_plus),
                "s_minus": sorted(labels[v] for v in dip.s_minus),
                "verified": bool(verify_dipolar(sub, dip)),
            }
        )
    rec.details["dipolar_sets"] = out
    return 0


def cmd_dicolor(args, rec: ResultRecord, g: OrientedGraph) -> int:
    h = PatternId.parse(args.pattern)
    rec.pattern = h.cli_name
    opts = DicolorOptions(verify=True if args.verify else None)
    try:
        res = dicolor_forbidding(g, h, opts)
    except NotHFree as exc:
        rec.details.update(_witness_details(exc))
        return 2
    rec.omega = res.omega
    rec.colors_used = res.colors_used
    rec.budget = res.budget
    rec.ell = res.peels[0].ell if res.peels else None
    try:
        certify(g, res.color_of)
        rec.certificate = "valid"
    except InvalidColoring:
        rec.certificate = "invalid"
    rec.details["peels"] = len(res.peels)
    if args.oracle:
        try:
            rec.details["exact"] = exact_dichromatic_number(g, args.limit).exact_value
        except BudgetExceeded:
            rec.details["exact"] = None
    if args.output:
        try:
            Path(args.output).write_text(serialize_coloring(res.color_of, h.cli_name, res.budget))
        except OSError as exc:
            raise _Exit(1, f"cannot write {args.output}: {exc.strerror}") from None
    rec.details["coloring"] = list(res.color_of)
    return 0


def cmd_exact(args, rec: ResultRecord, g: OrientedGraph) -> int:
    rec.omega = clique_number(g)
    try:
        report = exact_dichromatic_number(g, args.limit)
    except BudgetExceeded as exc:
        rec.details["error"] = str(exc)
        return 1
    rec.colors_used = report.exact_value
    rec.certificate = "valid"
    rec.details.update(exact=report.exact_value, nodes=report.nodes_explored, coloring=list(report.witness.color_of))
    return 0


def cmd_verify_coloring(args, rec: ResultRecord, g: OrientedGraph) -> int:
    try:
        text = Path(args.coloring).read_text()
    except OSError as exc:
        raise _Exit(1, f"cannot read {args.coloring}: {exc.strerror}") from None
    try:
        colors = parse_coloring(text, g.n)
    except ParseError as exc:
        raise _Exit(1, f"{args.coloring}: {exc}") from None
    rec.colors_used = len(set(colors))
    try:
        certify(g, colors)
    except InvalidColoring as exc:
        rec.certificate = "invalid"
        rec.details["cycle"] = list(exc.cycle)
        rec.details["color"] = exc.color
        return 1
    rec.certificate = "valid"
    return 0


def cmd_gen(args, rec: ResultRecord) -> tuple[int, OrientedGraph]:
    seed = args.seed
    kind = args.kind
    if kind == "random-oriented":
        g = generators.random_oriented(args.n, args.p, seed)
    elif kind == "random-tournament":
        g = generators.random_tournament(args.n, seed)
    elif kind == "transitive":
        g = generators.transitive_tournament(args.n)
    elif kind == "cycle":
        g = generators.directed_cycle(args.n)
    elif kind == "hfree":
        h = PatternId.parse(args.pattern)
        n, p = args.n, args.p
        try:
            g = generators.hfree_rejection(lambda s: generators.random_oriented(n, p, s), h, args.max_tries, seed)
        except generators.MaxTriesExceeded as exc:
            rec.details["error"] = str(exc)
            return 1, None
    elif kind == "greedy":
        h = PatternId.parse(args.pattern)
        g = generators.greedy_hfree(args.n, h, args.p, seed, args.omega_cap)
    else:  # pragma: no cover - argparse restricts choices
        raise _Exit(1, f"unknown kind {kind}")
    return 0, g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="p4dicolor", description="Dicolour oriented graphs without an induced P4 orientation.")
    parser.add_argument("--json", action="store_true", help="emit one JSON record per result")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_graph(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("graph", help="graph file ('-' for stdin)")
        return sp

    with_graph("omega", "clique number of the underlying graph")
    with_graph("scc", "strongly connected components in topological order")
    sp = with_graph("free", "check whether a pattern occurs as an induced subgraph")
    sp.add_argument("--pattern", required=True)
    sp = with_graph("closed-tournament", "path-minimising closed tournament of each non-trivial component")
    sp.add_argument("--cap", type=int, default=None, help="maximum number of maximum tournaments to enumerate")
    sp = with_graph("dipolar", "dipolar set of each non-trivial component")
    sp.add_argument("--pattern", required=True)
    sp = with_graph("dicolor", "dicolour a pattern-free graph")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--verify", action="store_true", help="scan for the pattern before colouring, whatever the size")
    sp.add_argument("--oracle", action="store_true", help="also compute the exact dichromatic number")
    sp.add_argument("--limit", type=int, default=None, help="node limit for the exact search")
    sp.add_argument("-o", "--output", help="write the colouring to this file")
    sp = with_graph("exact-dichi", "exact dichromatic number by exhaustive search")
    sp.add_argument("--limit", type=int, default=None)
    sp = with_graph("verify-coloring", "check that every colour class is acyclic")
    sp.add_argument("coloring")

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("kind", choices=["random-oriented", "random-tournament", "transitive", "cycle", "hfree", "greedy"])
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-p", type=float, default=0.3, help="edge probability or greedy density")
    sp.add_argument("--pattern", default="q4")
    sp.add_argument("--max-tries", type=int, default=1000)
    sp.add_argument("--omega-cap", type=int, default=None)
    sp.add_argument("--seed", type=int, default=int(os.environ.get(SEED_ENV, "0")))
    sp.add_argument("-o", "--output")
    return parser


_COMMANDS = {
    "omega": cmd_omega,
    "scc": cmd_scc,
    "free": cmd_free,
    "closed-tournament": cmd_closed_tournament,
    "dipolar": cmd_dipolar,
    "dicolor": cmd_dicolor,
    "exact-dichi": cmd_exact,
    "verify-coloring": cmd_verify_coloring,
}


def _emit(rec: ResultRecord, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(asdict(rec), sort_keys=True) + "\n")
        return
    parts = [rec.command]
    for key in ("pattern", "omega", "ell", "colors_used", "budget", "certificate"):
        val = getattr(rec, key)
        if val is not None:
            parts.append(f"{key}={val}")
    for key, val in rec.details.items():
        if key in ("coloring",):
            continue
        parts.append(f"{key}={val}")
    out.write(" ".join(parts) + "\n")


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    rec = ResultRecord(command=args.command)
    start = time.perf_counter()
    try:
        if args.command == "gen":
            rec.details["seed"] = args.seed
            code, g = cmd_gen(args, rec)
            if g is not None:
                text = serialize_graph(g)
                rec.digest = graph_digest(g)
                if args.output:
                    try:
                        Path(args.output).write_text(text)
                    except OSError as exc:
                        raise _Exit(1, f"cannot write {args.output}: {exc.strerror}") from None
                elif not args.json:
                    out.write(text)
                    return code
        else:
            g = _load(args.graph)
            rec.input = args.graph
            rec.digest = graph_digest(g)
            code = _COMMANDS[args.command](args, rec, g)
    except _Exit as exc:
        sys.stderr.write(f"error: {exc}\n")
        rec.details["error"] = str(exc)
        code = exc.code
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        rec.details["error"] = str(exc)
        code = 1
    rec.seconds = round(time.perf_counter() - start, 6)
    _emit(rec, args.json, out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
