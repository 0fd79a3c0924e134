"""Command line: generate, route2, sparsify, certify.

Exit codes: 0 success, 1 invariant or certificate failure, 2 infeasible or
invalid input, 3 I/O or format error. ``TWSPARSE_LOG`` sets the log level.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import networkx as nx

from . import path_of_sets as pos_io
from .exceptions import CertificateError, FormatError, InfeasibleError, InvariantError
from .graph import Graph, graph_from_dict, graph_to_dict, read_graph, tau
from .path_of_sets import PipelineConfig, generate_from_grid, validate
from .pipeline import certify, compare_certificates, sparsify
from .routing import DEFAULT_PAIR_BUDGET
from .two_pair import (
    build_chains,
    route_two_pairs,
    size_bound,
    tau_bound,
    verify_chain_properties,
    verify_good_minor,
    verify_minimality,
)

EXIT_OK, EXIT_INVARIANT, EXIT_INFEASIBLE, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("twsparse")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _write(text: str, out, name: str | None = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    if name is not None:
        path.mkdir(parents=True, exist_ok=True)
        path = path / name
    path.write_text(text)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def load_host(path) -> Graph:
    """A graph file (JSON or edge list) or the host inside a system file."""
    if str(path).endswith(".json"):
        d = _load_json(path)
        if isinstance(d, dict) and "host" in d:
            return graph_from_dict(d["host"])
        if isinstance(d, dict) and "graph" in d:
            return graph_from_dict(d["graph"])
        return graph_from_dict(d)
    return read_graph(path)


def _vertex_list(arg: str) -> list:
    """A comma list ``1,2,3`` or a file holding a JSON list or whitespace ids."""
    if os.path.exists(arg):
        text = Path(arg).read_text().strip()
        try:
            vals = json.loads(text) if text.startswith("[") else text.split()
            return [int(x) for x in vals]
        except (ValueError, TypeError) as exc:
            raise FormatError(f"{arg}: not a vertex list") from exc
    try:
        return [int(x) for x in arg.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"{arg!r} is neither a file nor a comma-separated vertex list") from exc


# ---------------------------------------------------------------------------
# subcommands


def cmd_generate(args) -> int:
    if args.kind == "grid-pos":
        if args.h is None or args.r is None:
            raise UsageError("grid-pos needs --h and --r")
        _, pos = generate_from_grid(args.h, args.r, check=False)
        v = validate(pos, args.budget)
        if not v:
            log.error("generated system fails validation: %s", v.violations[:3])
            return EXIT_INVARIANT
        _write(_dump(pos.to_dict()), args.out)
        return EXIT_OK
    if args.n is None:
        raise UsageError("random-graph needs --n")
    if args.seed is None:
        raise UsageError("random-graph needs --seed")
    G = nx.gnp_random_graph(args.n, args.p, seed=args.seed)
    g = Graph.from_edges(sorted(G.edges()), G.nodes())
    _write(_dump({"graph": graph_to_dict(g), "seed": args.seed, "n": args.n, "p": args.p}), args.out)
    return EXIT_OK


def cmd_route2(args) -> int:
    g = load_host(args.graph)
    S1, T1, S2, T2 = (_vertex_list(x) for x in (args.S1, args.T1, args.S2, args.T2))
    try:
        res = route_two_pairs(g, S1, T1, S2, T2)
    except InfeasibleError as exc:
        _write(_dump({"infeasible": str(exc), "cut": sorted(exc.cut)}), args.out)
        return EXIT_INFEASIBLE
    m = res.minor
    k = m.k
    k1 = max(len(set(S1)), len(set(S2)))
    chains = build_chains(m)
    verdicts = {
        "good_minor": verify_good_minor(m).to_dict(),
        "minimality": verify_minimality(m).to_dict(),
        "chains": verify_chain_properties(m, chains).to_dict(),
        "first": res.first.verify(g).to_dict(),
        "second": res.second.verify(g).to_dict(),
    }
    sizes = {
        "minor_vertices": m.H.number_of_vertices(),
        "minor_bound": size_bound(k),
        "tau_minor": tau(m.H),
        "tau_union": res.tau,
        "tau_bound": tau_bound(k1),
    }
    ok = all(v["ok"] for v in verdicts.values())
    ok = ok and sizes["minor_vertices"] <= sizes["minor_bound"] and sizes["tau_union"] <= sizes["tau_bound"]
    report = {
        "first": res.first.to_dict(),
        "second": res.second.to_dict(),
        "minor": m.to_dict(),
        "union": graph_to_dict(res.union),
        "chains": chains.to_dict(),
        "sizes": sizes,
        "verdicts": verdicts,
        "ok": ok,
    }
    _write(_dump(report), args.out)
    return EXIT_OK if ok else EXIT_INVARIANT


def _system_for(args):
    if args.system is not None:
        pos = pos_io.load(args.system)
        host = load_host(args.host) if args.host else pos.host
        if host != pos.host:
            raise UsageError("--host differs from the host stored in the system file")
        return pos
    if args.h is None or args.r is None:
        raise UsageError("give a system file or --h and --r for a grid system")
    _, pos = generate_from_grid(args.h, args.r, check=False)
    return pos


def cmd_sparsify(args) -> int:
    if args.seed is None:
        raise UsageError("sparsify needs --seed")
    pos = _system_for(args)
    for flag in ("h", "r"):
        want = getattr(args, flag)
        if want is not None and want != getattr(pos, flag):
            raise UsageError(f"--{flag}={want} does not match the system ({getattr(pos, flag)})")
    v = validate(pos, args.budget)
    if not v:
        _write(_dump({"invalid_system": v.to_dict()}), args.out, "report.json" if args.out else None)
        return EXIT_INFEASIBLE
    if args.degree == 4:
        n = 1
    elif args.rstar is not None:
        if pos.r % args.rstar:
            raise UsageError(f"--rstar={args.rstar} does not divide r={pos.r}")
        n = pos.r // args.rstar
        if args.n_expanders is not None and args.n_expanders != n:
            raise UsageError("--n-expanders and --rstar disagree")
    else:
        n = args.n_expanders or 1
    try:
        cfg = PipelineConfig.for_system(pos, n, theta=args.theta, seed=args.seed, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    run = sparsify(pos.host, pos, cfg, args.degree)
    if args.out is None:
        sys.stdout.write(_dump({"graph": graph_to_dict(run.graph), "witness": run.bundle, "certificate": run.certificate}))
    else:
        _write(_dump({"graph": graph_to_dict(run.graph)}), args.out, "sparsifier.json")
        _write(_dump(run.bundle), args.out, "witness.json")
        _write(_dump(run.certificate), args.out, "certificate.json")
    return EXIT_OK if run.certificate["ok"] else EXIT_INVARIANT


def cmd_certify(args) -> int:
    host = load_host(args.host)
    out = load_host(args.sparsifier)
    bundle = _load_json(args.witness)
    stored = _load_json(args.certificate)
    try:
        recomputed = certify(host, out, bundle)
    except CertificateError as exc:
        _write(_dump({"ok": False, "error": str(exc)}), args.out)
        return EXIT_INVARIANT
    except (KeyError, TypeError) as exc:
        raise FormatError(f"witness bundle is malformed: {exc}") from exc
    diffs = compare_certificates(stored, recomputed)
    ok = not diffs and recomputed["ok"]
    failed = sorted(k for k, v in recomputed["checks"].items() if not v)
    _write(_dump({"ok": ok, "mismatched_fields": diffs, "failed_checks": failed}), args.out)
    return EXIT_OK if ok else EXIT_INVARIANT


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twsparse", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="output file (or directory for sparsify); stdout if omitted")
        sp.add_argument("--budget", type=int, default=DEFAULT_PAIR_BUDGET, help="subset-pair budget for linkedness checks")

    gp = sub.add_parser("generate", help="write a grid path-of-sets system or a random graph")
    gp.add_argument("kind", choices=["grid-pos", "random-graph"])
    gp.add_argument("--h", type=int)
    gp.add_argument("--r", type=int)
    gp.add_argument("--n", type=int)
    gp.add_argument("--p", type=float, default=0.3)
    gp.add_argument("--seed", type=int)
    common(gp)
    gp.set_defaults(func=cmd_generate)

    rp = sub.add_parser("route2", help="route two pairs of vertex sets through a minimal minor")
    rp.add_argument("graph")
    for name in ("S1", "T1", "S2", "T2"):
        rp.add_argument(name, help="comma list or file of vertex ids")
    common(rp)
    rp.set_defaults(func=cmd_route2)

    sp = sub.add_parser("sparsify", help="build a degree-3 or degree-4 sparsifier with certificate")
    sp.add_argument("system", nargs="?", help="path-of-sets JSON; omit to use a grid system from --h/--r")
    sp.add_argument("--host", help="host graph (defaults to the host inside the system file)")
    sp.add_argument("--degree", type=int, choices=[3, 4], default=3)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--h", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--rstar", type=int)
    sp.add_argument("--n-expanders", type=int, dest="n_expanders")
    sp.add_argument("--theta", type=int)
    common(sp)
    sp.set_defaults(func=cmd_sparsify)

    cp = sub.add_parser("certify", help="recompute a certificate from its witnesses")
    cp.add_argument("host")
    cp.add_argument("sparsifier")
    cp.add_argument("witness")
    cp.add_argument("certificate")
    common(cp)
    cp.set_defaults(func=cmd_certify)
    return p


def _setup_logging() -> None:
    level = os.environ.get("TWSPARSE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"twsparse: error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InfeasibleError as exc:
        print(f"twsparse: infeasible: {exc}; cut {sorted(exc.cut)}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InvariantError, CertificateError) as exc:
        print(f"twsparse: invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (OSError, FormatError) as exc:
        print(f"twsparse: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"twsparse: error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
