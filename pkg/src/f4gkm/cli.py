"""Command-line driver: ``f4gkm {group,graph,verify,hilbert,corollary,rank}``."""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from . import __version__
from .linalg import ResourceCapExceeded
from .report import ReportDocument

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _prime(s: str) -> int:
    p = int(s)
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{s} is not a prime")
    return p


def _non_negative(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"{s} is negative")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{s} is not positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="print the JSON report")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="print a text summary (default)")
    common.add_argument("--prime", type=_prime, action="append", dest="primes", metavar="P", help="prime field (repeatable; default 2 3 5)")
    common.add_argument("--max-degree", type=_non_negative, default=16, metavar="N", help="truncation degree (default 16)")
    common.add_argument("--threads", type=_positive, default=1, metavar="K")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled case lists")
    common.add_argument("--out", type=Path, metavar="PATH", help="write the report to PATH instead of stdout")
    common.add_argument("--inject-fault", metavar="CHECK", help="perturb one named check to demonstrate failure detection")
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp from the JSON report")

    parser = argparse.ArgumentParser(prog="f4gkm", description="Exact verification of the GKM presentation for F4/T.")
    parser.add_argument("--version", action="version", version=f"f4gkm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="W(F4), W(Spin(8)), the coset table, rho and kappa")
    g = sub.add_parser("graph", parents=[common], help="the GKM graph and its coset quotient")
    g.add_argument("--dot", type=Path, metavar="PATH", help="write the full graph in DOT format")
    g.add_argument("--quotient-dot", type=Path, metavar="PATH", help="write the six-vertex quotient in DOT format")
    v = sub.add_parser("verify", parents=[common], help="GKM membership, relations and identities")
    v.add_argument("--sample-size", type=_positive, default=12, help="cases per level for the sampled lemma checks")
    h = sub.add_parser("hilbert", parents=[common], help="regular sequences and Hilbert functions over GF(p)")
    h.add_argument("--csv", type=Path, metavar="PATH", help="write the Hilbert coefficients as CSV")
    sub.add_parser("corollary", parents=[common], help="the non-equivariant presentation")
    r = sub.add_parser("rank", parents=[common], help="rank of degree-2d GKM functions")
    r.add_argument("--degree", type=_non_negative, default=1, metavar="D", help="half the cohomological degree (default 1)")
    r.add_argument("--cell-cap", type=_positive, metavar="CELLS", help="abort when a dense block exceeds CELLS entries")
    return parser


def _config(args) -> dict:
    cfg = {
        "command": args.command,
        "primes": list(args.primes),
        "max_degree": args.max_degree,
        "threads": args.threads,
        "seed": args.seed,
        "inject_fault": args.inject_fault,
    }
    if args.command == "rank":
        cfg["degree"] = args.degree
    if args.command == "verify":
        cfg["sample_size"] = args.sample_size
    return cfg


def run(args) -> tuple[ReportDocument, list[str]]:
    """Run the subcommand; returns the report and extra text lines."""
    from . import suites

    fault = args.inject_fault
    if fault is not None:
        allowed = suites.faults_for(args.command)
        if fault not in allowed:
            raise UsageError(f"--inject-fault {fault!r} does not apply to '{args.command}'; choose from {', '.join(allowed)}")
    doc = ReportDocument(__version__, _config(args))
    lines: list[str] = []
    cmd = args.command
    if cmd == "group":
        from .weyl import f4_weyl

        W = f4_weyl()
        lines = suites.group_summary(W)
        doc.checks = suites.group_checks(W, fault)
    elif cmd == "graph":
        from .gkm.export import full_graph_dot, quotient_dot
        from .gkm.graph import gkm_graph

        G = gkm_graph()
        lines = [f"vertices = {G.n_vertices}", f"edges = {G.n_edges}"]
        doc.checks = suites.graph_checks(G, fault)
        if args.dot:
            args.dot.write_text(full_graph_dot(G))
            lines.append(f"wrote {args.dot}")
        if args.quotient_dot:
            args.quotient_dot.write_text(quotient_dot(G))
            lines.append(f"wrote {args.quotient_dot}")
    elif cmd == "verify":
        doc.checks = suites.verify_suite(args.threads, args.seed, args.sample_size, fault)
    elif cmd == "hilbert":
        doc.checks, tables = suites.hilbert_suite(args.primes, args.max_degree, args.threads, fault)
        if args.csv:
            keys = sorted(tables)
            rows = ["degree," + ",".join(keys)]
            for d in range(0, args.max_degree + 1, 2):
                rows.append(f"{d}," + ",".join(str(tables[k][d]) for k in keys))
            args.csv.write_text("\n".join(rows) + "\n")
            lines.append(f"wrote {args.csv}")
    elif cmd == "corollary":
        from .hilbert.corollary import verify_corollary

        doc.checks = verify_corollary(args.max_degree, args.primes, args.threads, fault)
    elif cmd == "rank":
        checks, res, expected = suites.rank_suite(args.degree, fault, args.cell_cap)
        doc.checks = checks
        shown = res.upper_bound if res.exact else f"inconclusive (lower bound {res.lower_bound}, upper bound {res.upper_bound})"
        lines = [f"rank = {shown}, expected = {expected}, {'PASS' if doc.overall == 'pass' else 'FAIL'}"]
    return doc, lines


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.primes:
        args.primes = [2, 3, 5]
    args.primes = sorted(set(args.primes))
    fmt = args.fmt or "text"
    try:
        doc, lines = run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"f4gkm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapExceeded as exc:
        print(f"f4gkm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not args.no_timestamp:
        doc.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if fmt == "json":
        body = doc.to_json() + "\n"
    else:
        body = "\n".join(lines + [doc.to_text()]) + "\n"
    if args.out:
        args.out.write_text(body)
    else:
        sys.stdout.write(body)
    return EXIT_PASS if doc.overall == "pass" else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
