"""Command-line front end.

Exit codes: 0 ok/pass/found, 1 verification failure or no witness,
2 usage or parse error, 3 resource or convergence error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .cycles import find_s_chorded_cycle, find_s_chorded_k_cycle
from .families import FAMILY_NAMES, FamilySpec, family
from .graph import Graph, GraphError, build_graph
from .graph6 import graph6_decode, graph6_encode
from .lab import (
    TSV_HEADER,
    EnumerationError,
    canonical_g6,
    check_k_chorded_extremal,
    dumps,
    enumerate_graphs,
    extremal_spectral,
    verify_lemma,
    verify_theorem_chorded,
)
from .spectral import ConvergenceError, spectral_radius, threshold

log = logging.getLogger("chorded_spectra")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

FAMILY_HELP = (
    "family spec 'name:p1,p2,...'; names: " + ", ".join(FAMILY_NAMES)
    + " (e.g. star:9, complete_bipartite:2,5, book_star:1,2, gnks:6,4,1, fixture:H1)"
)


@dataclass
class CommandResult:
    status: str  # ok | fail | error
    payload: dict
    elapsed: float

    def render(self) -> str:
        return dumps({"status": self.status, "payload": self.payload})


def read_edge_file(path: str) -> Graph:
    """Edge list: one ``u v`` pair per line, ``#`` comments, optional ``n=<count>`` line."""
    n = None
    edges = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            n = int(line[2:])
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return build_graph(n, edges)


def _load_graph(args) -> tuple[Graph, str]:
    given = [x for x in (args.family, args.g6, args.edges) if x]
    if len(given) != 1:
        raise GraphError("give exactly one of --family, --g6, --edges")
    if args.family:
        return family(FamilySpec.parse(args.family)), args.family
    if args.g6:
        return graph6_decode(args.g6), args.g6
    return read_edge_file(args.edges), args.edges


def cmd_rho(args) -> CommandResult:
    g, label = _load_graph(args)
    res = spectral_radius(g)
    payload = {
        "input": label,
        "graph6": graph6_encode(g),
        "n": g.n,
        "m": g.m,
        "rho": res.rho,
        "residual": res.residual,
        "iterations": res.iterations,
        "perron": None if res.perron is None else [float(x) for x in res.perron],
    }
    if g.m >= 4:
        payload["threshold_chorded"] = threshold("chorded", g.m)
    if args.k is not None:
        payload["threshold_k_chorded"] = threshold("k_chorded", g.m, args.k)
    return CommandResult("ok", payload, 0.0)


def cmd_detect(args) -> CommandResult:
    g, label = _load_graph(args)
    if args.s < 1:
        raise GraphError("--s must be at least 1")
    if args.k is None:
        w = find_s_chorded_cycle(g, args.s)
    else:
        w = find_s_chorded_k_cycle(g, args.s, args.k)
    payload = {"input": label, "s": args.s, "length": args.k, "witness": None if w is None else w.to_dict()}
    return CommandResult("ok" if w is not None else "fail", payload, 0.0)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise GraphError("missing " + ", ".join("--" + n for n in missing))


def cmd_verify(args) -> CommandResult:
    claim = args.claim
    if claim == "thm-chorded":
        _need(args, "m")
        rep = verify_theorem_chorded(args.m, jobs=args.jobs)
    elif claim == "prop-doubly":
        _need(args, "n")
        rep = verify_lemma("prop_doubly_chorded", n=args.n)
    elif claim == "eg-path":
        _need(args, "n", "k")
        rep = verify_lemma("eg_path", n=args.n, k=args.k)
    elif claim == "cycle-bound":
        _need(args, "n", "k")
        rep = verify_lemma("cycle_bound", n=args.n, k=args.k)
    elif claim == "ore-bound":
        _need(args, "n")
        rep = verify_lemma("ore_bound", n=args.n)
    elif claim == "k-chorded-extremal":
        _need(args, "k", "m")
        rep = check_k_chorded_extremal(args.k, args.m, seed=args.seed)
    else:
        raise GraphError(f"unknown claim {claim!r}")
    return CommandResult("ok" if rep.passed else "fail", rep.to_dict(), 0.0)


def cmd_extremal(args) -> CommandResult:
    rep = extremal_spectral(args.m, args.cls, jobs=args.jobs)
    return CommandResult("ok", rep.to_dict(), 0.0), rep


def cmd_enumerate(args) -> CommandResult:
    graphs = sorted(canonical_g6(g) for g in enumerate_graphs(args.m, args.cls, jobs=args.jobs))
    return CommandResult("ok", {"m": args.m, "class": args.cls, "count": len(graphs), "graphs": graphs}, 0.0)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chorded-spectra", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("--family", help=FAMILY_HELP)
        sp.add_argument("--g6", help="graph6 string")
        sp.add_argument("--edges", metavar="FILE", help="edge-list file ('u v' per line, optional 'n=N')")

    def output(sp):
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
        fmt.add_argument("--tsv", dest="fmt", action="store_const", const="tsv")

    sp = sub.add_parser("rho", help="spectral radius, Perron vector and thresholds")
    graph_input(sp)
    sp.add_argument("--k", type=int, help="also report the (2k-3)-chorded (2k+1)-cycle threshold")
    output(sp)
    sp.set_defaults(func=cmd_rho)

    sp = sub.add_parser("detect", help="find a cycle with at least s chords")
    graph_input(sp)
    sp.add_argument("--s", type=int, default=1, help="minimum number of chords")
    sp.add_argument("--k", type=int, help="cycle length (any length if omitted)")
    output(sp)
    sp.set_defaults(func=cmd_detect)

    sp = sub.add_parser("verify", help="run a brute-force verifier")
    sp.add_argument("claim", choices=["thm-chorded", "prop-doubly", "eg-path", "cycle-bound", "ore-bound",
                                      "k-chorded-extremal"])
    for flag in ("m", "n", "k"):
        sp.add_argument(f"--{flag}", type=int)
    sp.add_argument("--seed", type=int, default=0, help="seed for randomized evidence sampling")
    sp.add_argument("--jobs", type=int, default=1)
    output(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("extremal", help="maximum spectral radius over an enumerated class")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--class", dest="cls", default="chorded_free",
                    help="all | chorded_free | doubly_chorded_free | k_chorded_free:K")
    sp.add_argument("--jobs", type=int, default=1)
    output(sp)
    sp.set_defaults(func=cmd_extremal)

    sp = sub.add_parser("enumerate", help="list one graph6 per isomorphism class")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--class", dest="cls", default="all")
    sp.add_argument("--jobs", type=int, default=1)
    output(sp)
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    start = time.perf_counter()
    try:
        out = args.func(args)
    except (GraphError, ValueError) as exc:
        print(dumps({"status": "error", "payload": {"error": str(exc)}}))
        return EXIT_USAGE
    except (ConvergenceError, EnumerationError, MemoryError) as exc:
        print(dumps({"status": "error", "payload": {"error": str(exc)}}))
        return EXIT_RESOURCE
    report = None
    if isinstance(out, tuple):
        out, report = out
    out.elapsed = time.perf_counter() - start
    if args.fmt == "tsv":
        print(_tsv(args.command, out, report))
    else:
        print(out.render())
    log.info("elapsed %.3fs", out.elapsed)
    return EXIT_OK if out.status == "ok" else EXIT_FAIL


def _tsv(command: str, out: CommandResult, report) -> str:
    if report is not None:
        return TSV_HEADER + "\n" + report.tsv_row()
    if command == "enumerate":
        return "\n".join(out.payload["graphs"])
    rows = [f"{k}\t{v}" for k, v in sorted(out.payload.items()) if not isinstance(v, (dict, list))]
    return "\n".join(["status\t" + out.status] + rows)


if __name__ == "__main__":
    sys.exit(main())
