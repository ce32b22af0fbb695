"""Command-line entry point wiring all modules into reproducible experiments.

Every JSON payload embeds a manifest (subcommand, normalized flags, seeds,
input file hashes, tool and generator versions); re-running a manifest
reproduces the output byte-for-byte.  Exhausted/NotFound are successful
completions (exit 0) -- the report is the result.  Exit 1 = usage error,
exit 2 = malformed input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import bounds as bounds_mod
from . import oracle as oracle_mod
from . import randomlab
from .embedder import (
    BiDensityWitness,
    Certified,
    check_bidense_exact,
    embed_greedy,
)
from .graphs import (
    BLUE,
    RED,
    BoundedGraphWitness,
    Coloring,
    Graph,
    GraphFormatError,
    parse_coloring,
    serialize_coloring,
    serialize_graph,
)
from .patterns import load_pattern, parse_rho
from .search import (
    SearchConfig,
    find_mono_H,
    find_random_graph_mono,
    find_red_H_or_blue_clique,
)

TOOL_VERSION = "0.1.0"
SCHEMA = "ramseykit/v1"


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise UsageError(message)


def _hash_file(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_coloring(spec: str) -> tuple[Coloring, Optional[str]]:
    """Coloring from a file, or shorthands random:<n>:<p>:<seed> / mono:<n>:<R|B>."""
    if spec.startswith("random:"):
        _, n, p, seed = spec.split(":")
        return randomlab.sample_coloring(int(n), parse_rho(p), int(seed)), None
    if spec.startswith("mono:"):
        _, n, color = spec.split(":")
        return Coloring.monochromatic(int(n), color), None
    path = Path(spec)
    if not path.exists():
        raise InputError(f"coloring file not found: {spec}")
    try:
        return parse_coloring(path.read_text()), _hash_file(spec)
    except GraphFormatError as e:
        raise InputError(f"{spec}: {e}") from None


def _load_graph_arg(spec: str) -> tuple[Graph, Optional[str]]:
    try:
        g = load_pattern(spec)
    except FileNotFoundError as e:
        raise InputError(str(e)) from None
    except GraphFormatError as e:
        raise InputError(f"{spec}: {e}") from None
    digest = _hash_file(spec) if Path(spec).exists() else None
    return g, digest


def _grid(spec: str) -> list[int]:
    """Parse '8', '8,16,32', or 'start:stop:step' (stop inclusive)."""
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid spec must be start:stop:step, got {spec!r}")
        a, b, step = (int(p) for p in parts)
        return list(range(a, b + 1, step))
    return [int(p) for p in spec.split(",")]


def _manifest(args: argparse.Namespace, hashes: dict[str, str]) -> dict:
    flags = {k: (str(v) if isinstance(v, Fraction) else v)
             for k, v in sorted(vars(args).items())
             if k not in ("func", "out", "format") and v is not None}
    return {
        "subcommand": args.subcommand,
        "flags": flags,
        "input_hashes": hashes,
        "tool_version": TOOL_VERSION,
        "generator_version": randomlab.GENERATOR_VERSION,
    }


def _emit_json(payload: dict, out: Optional[str]):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header: list[str], rows: list[list], out: Optional[str]):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


# --------------------------------------------------------------------------
# Subcommand handlers.
# --------------------------------------------------------------------------


def _cmd_bounds(args) -> int:
    rho = Fraction(args.rho) if args.rho and "/" in args.rho else (
        float(args.rho) if args.rho else None)
    if args.grid or args.format == "csv":
        ts = _grid(args.t)
        rhos = [Fraction(r) if "/" in r else float(r) for r in args.rho.split(",")]
        rows = []
        for t in sorted(ts):
            for r in rhos:
                rep = bounds_mod.evaluate(args.theorem, t=t, rho=r, s=args.s, m=args.m)
                reps = rep if isinstance(rep, tuple) else (rep,)
                for one in reps:
                    rows.append([args.theorem, t, str(r), f"{one.log2_bound:.12g}",
                                 one.preconditions_met])
        _emit_csv(["theorem", "t", "rho", "log2_bound", "preconditions_met"], rows, args.out)
        return 0
    rep = bounds_mod.evaluate(args.theorem, t=args.t_int, rho=rho, s=args.s, m=args.m)
    result = [r.to_json() for r in rep] if isinstance(rep, tuple) else rep.to_json()
    _emit_json({"schema": SCHEMA, "manifest": _manifest(args, {}), "result": result},
               args.out)
    return 0


def _cmd_embed(args) -> int:
    pattern, ph = _load_graph_arg(args.pattern)
    hashes = {}
    if ph:
        hashes["pattern"] = ph
    if args.color:
        host, hh = _load_coloring(args.host)
    else:
        host, hh = _load_graph_arg(args.host)
    if hh:
        hashes["host"] = hh
    result: dict = {}
    if args.sigma is not None:
        cert = check_bidense_exact(host, args.sigma, args.delta, color=args.color,
                                   budget=args.budget)
        if isinstance(cert, Certified):
            result["bidense"] = {"status": "certified", **cert.to_json()}
        elif isinstance(cert, BiDensityWitness):
            result["bidense"] = {"status": "witness", **cert.to_json()}
        else:
            result["bidense"] = {"status": "too_large", **cert.to_json()}
    res = embed_greedy(pattern, host, args.delta, color=args.color)
    if res.ok:
        result["status"] = "embedded"
        result["embedding"] = list(res.embedding.image)
    else:
        result["status"] = "failure"
        result["failure"] = res.failure.to_json()
    result["trace_summary"] = {
        "steps": len(res.trace),
        "part_size": res.part_size,
        "hypothesis_held": res.hypothesis_held,
    }
    _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                "result": result}, args.out)
    return 0


def _search_config(args, pattern: Graph) -> SearchConfig:
    rho = parse_rho(args.rho) if args.rho else float(pattern.density)
    return SearchConfig(rho=rho, seed=args.seed,
                        max_depth=args.budget if args.budget else 8)


def _cmd_search(args) -> int:
    coloring, ch = _load_coloring(args.coloring)
    pattern, ph = _load_graph_arg(args.pattern)
    hashes = {k: v for k, v in (("coloring", ch), ("pattern", ph)) if v}
    config = _search_config(args, pattern)
    if args.mode == "mono":
        outcome = find_mono_H(coloring, pattern, config)
    elif args.mode == "vs-clique":
        s = args.clique_s or pattern.t
        outcome = find_red_H_or_blue_clique(coloring, pattern, s, config)
    elif args.mode == "random-bounded":
        cap = args.degree_cap if args.degree_cap is not None else pattern.max_degree
        exceptional = frozenset(v for v in range(pattern.t) if pattern.degree(v) > cap)
        witness = BoundedGraphWitness(pattern, cap, exceptional)
        outcome = find_random_graph_mono(coloring, pattern, witness, config)
    else:
        raise UsageError(f"unknown mode {args.mode!r}")
    result = outcome.to_json()
    if not args.trace_full:
        result["trace"] = result["trace"][-5:]
        result["trace_truncated"] = True
    _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                "result": result}, args.out)
    return 0


def _cmd_random(args) -> int:
    hashes = {}
    if args.random_op == "gnp":
        g = randomlab.sample_gnp(args.t_int, parse_rho(args.rho), args.seed)
        if args.out:
            Path(args.out).write_text(serialize_graph(g))
            return 0
        sys.stdout.write(serialize_graph(g))
        return 0
    if args.random_op == "partition":
        g, gh = _load_graph_arg(args.graph)
        if gh:
            hashes["graph"] = gh
        cert = randomlab.judicious_partition(g, args.max_tries, args.seed)
        _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                    "result": cert.to_json()}, args.out)
        return 0
    if args.random_op == "spread":
        g, gh = _load_graph_arg(args.graph)
        if gh:
            hashes["graph"] = gh
        rep = randomlab.verify_degree_spread(g, args.delta, args.eps,
                                             parse_rho(args.rho), args.mode,
                                             args.budget, args.seed)
        _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                    "result": rep.to_json()}, args.out)
        return 0
    if args.random_op == "chernoff":
        bound = randomlab.chernoff_tail(args.n, args.p, args.theta)
        result = {"n": args.n, "p": args.p, "theta": args.theta, "bound": bound,
                  "exponential_base": "e"}
        if args.empirical:
            result["empirical"] = randomlab.empirical_binomial_tail(
                args.n, args.p, args.theta, args.empirical, args.seed)
            result["samples"] = args.empirical
        _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                    "result": result}, args.out)
        return 0
    raise UsageError(f"unknown random operation {args.random_op!r}")


def _cmd_oracle(args) -> int:
    hashes = {}
    if args.oracle_op == "find":
        coloring, ch = _load_coloring(args.coloring)
        pattern, ph = _load_graph_arg(args.pattern)
        hashes = {k: v for k, v in (("coloring", ch), ("pattern", ph)) if v}
        emb = oracle_mod.find_mono_subgraph_exact(coloring, pattern, args.color)
        result = {"found": emb is not None}
        if emb is not None:
            result["embedding"] = list(emb.image)
        _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                    "result": result}, args.out)
        return 0
    if args.oracle_op == "ramsey":
        h1, h1h = _load_graph_arg(args.h1)
        h2, h2h = _load_graph_arg(args.h2)
        hashes = {k: v for k, v in (("h1", h1h), ("h2", h2h)) if v}
        cert = oracle_mod.ramsey_number_exact(h1, h2, args.nmax)
        result = {"kind": cert.kind, "n": cert.n, "verified": cert.verify(),
                  "generator_version": randomlab.GENERATOR_VERSION}
        if cert.witness is not None:
            result["witness_at"] = cert.witness_n
            result["witness"] = serialize_coloring(cert.witness, compact=True).strip()
        _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                    "result": result}, args.out)
        return 0
    if args.oracle_op == "certify-lower":
        pattern, ph = _load_graph_arg(args.pattern)
        if ph:
            hashes["pattern"] = ph
        witness = oracle_mod.lower_bound_certificate_random(
            pattern, args.n, args.tries, args.seed)
        result = {"kind": "lower" if witness is not None else "not_found",
                  "n": args.n, "verified": witness is not None,
                  "generator_version": randomlab.GENERATOR_VERSION}
        if witness is not None:
            result["witness"] = serialize_coloring(witness, compact=True).strip()
        _emit_json({"schema": SCHEMA, "manifest": _manifest(args, hashes),
                    "result": result}, args.out)
        return 0
    raise UsageError(f"unknown oracle operation {args.oracle_op!r}")


def _sweep_search_cell(cell):
    n, seed, pattern_spec, mode, rho, p_red = cell
    coloring = randomlab.sample_coloring(n, p_red, seed)
    pattern = load_pattern(pattern_spec)
    config = SearchConfig(rho=rho if rho else float(pattern.density), seed=seed)
    if mode == "mono":
        outcome = find_mono_H(coloring, pattern, config)
    else:
        outcome = find_red_H_or_blue_clique(coloring, pattern, pattern.t, config)
    return [n, seed, pattern_spec, mode, outcome.kind, outcome.color or ""]


def _cmd_sweep(args) -> int:
    workers = int(os.environ.get("RAMSEYKIT_WORKERS", "1"))
    if args.kind == "bounds":
        ts = _grid(args.t)
        rhos = [Fraction(r) if "/" in r else float(r) for r in args.rho.split(",")]
        rows = []
        for t in sorted(ts):
            for r in rhos:
                rep = bounds_mod.evaluate(args.theorem, t=t, rho=r, s=args.s, m=args.m)
                reps = rep if isinstance(rep, tuple) else (rep,)
                for one in reps:
                    rows.append([args.theorem, t, str(r), f"{one.log2_bound:.12g}",
                                 one.preconditions_met])
        _emit_csv(["theorem", "t", "rho", "log2_bound", "preconditions_met"],
                  rows, args.out)
        return 0
    if args.kind == "search":
        ns = _grid(args.n)
        seeds = _grid(args.seeds)
        rho = parse_rho(args.rho) if args.rho else None
        cells = sorted((n, s, args.pattern, args.mode, rho, args.p_red)
                       for n in ns for s in seeds)
        if workers > 1:
            from multiprocessing import Pool

            with Pool(workers) as pool:
                rows = pool.map(_sweep_search_cell, cells)
        else:
            rows = [_sweep_search_cell(c) for c in cells]
        rows.sort(key=lambda r: (r[0], r[1]))
        _emit_csv(["n", "seed", "pattern", "mode", "outcome", "color"], rows, args.out)
        return 0
    raise UsageError(f"unknown sweep kind {args.kind!r}")


# --------------------------------------------------------------------------
# Argument wiring.
# --------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="ramseykit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("bounds", help="evaluate a bound formula in log2 domain")
    p.add_argument("--theorem", required=True, choices=bounds_mod.THEOREMS)
    p.add_argument("--t", dest="t", required=True,
                   help="vertex count, or a grid spec with --grid")
    p.add_argument("--rho", help="density as p/q or float (comma list with --grid)")
    p.add_argument("--s", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--grid", action="store_true")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("embed", help="greedy embedding into a host")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--color", choices=[RED, BLUE])
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--sigma", type=float, help="also run the exact bi-density check")
    p.add_argument("--budget", type=int, default=10 ** 9)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("search", help="constructive monochromatic search")
    p.add_argument("--coloring", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--mode", default="mono",
                   choices=["mono", "vs-clique", "random-bounded"])
    p.add_argument("--rho")
    p.add_argument("--clique-s", dest="clique_s", type=int)
    p.add_argument("--degree-cap", dest="degree_cap", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace-full", dest="trace_full", action="store_true")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("random", help="samplers and probabilistic checks")
    rsub = p.add_subparsers(dest="random_op", required=True)
    q = rsub.add_parser("gnp")
    q.add_argument("--t", dest="t_int", type=int, required=True)
    q.add_argument("--rho", required=True)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_random)
    q = rsub.add_parser("partition")
    q.add_argument("--graph", required=True)
    q.add_argument("--max-tries", dest="max_tries", type=int, default=64)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_random)
    q = rsub.add_parser("spread")
    q.add_argument("--graph", required=True)
    q.add_argument("--delta", type=float, required=True)
    q.add_argument("--eps", type=float, required=True)
    q.add_argument("--rho", required=True)
    q.add_argument("--mode", default="sampled", choices=["sampled", "exhaustive"])
    q.add_argument("--budget", type=int, default=10_000)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_random)
    q = rsub.add_parser("chernoff")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--p", type=float, required=True)
    q.add_argument("--theta", type=float, required=True)
    q.add_argument("--empirical", type=int)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_random)

    p = sub.add_parser("oracle", help="exact desk-scale computations")
    osub = p.add_subparsers(dest="oracle_op", required=True)
    q = osub.add_parser("find")
    q.add_argument("--coloring", required=True)
    q.add_argument("--pattern", required=True)
    q.add_argument("--color", required=True, choices=[RED, BLUE])
    q.set_defaults(func=_cmd_oracle)
    q = osub.add_parser("ramsey")
    q.add_argument("--h1", required=True)
    q.add_argument("--h2", required=True)
    q.add_argument("--nmax", type=int, default=8)
    q.set_defaults(func=_cmd_oracle)
    q = osub.add_parser("certify-lower")
    q.add_argument("--pattern", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--tries", type=int, default=1000)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("sweep", help="parameter grids, CSV output")
    p.add_argument("--kind", required=True, choices=["bounds", "search"])
    p.add_argument("--theorem", choices=bounds_mod.THEOREMS)
    p.add_argument("--t")
    p.add_argument("--rho")
    p.add_argument("--s", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--pattern")
    p.add_argument("--mode", default="mono", choices=["mono", "vs-clique"])
    p.add_argument("--n")
    p.add_argument("--seeds", default="0:4:1")
    p.add_argument("--p-red", dest="p_red", type=float, default=0.5)
    p.set_defaults(func=_cmd_sweep)

    # --out and --format are accepted by every subcommand, after the final
    # subcommand word (so nested ones get them instead of their parent)
    nested = {"random": "random_op", "oracle": "oracle_op"}
    for name, action in sub.choices.items():
        if name in nested:
            for inner in action._subparsers._group_actions[0].choices.values():
                inner.add_argument("--out")
                inner.add_argument("--format", choices=["json", "csv"], default="json")
        else:
            action.add_argument("--out")
            action.add_argument("--format", choices=["json", "csv"], default="json")
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.subcommand == "bounds":
            grid_mode = args.grid or args.format == "csv"
            args.t_int = None if (grid_mode or ":" in args.t or "," in args.t) \
                else int(args.t)
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 1
    except InputError as e:
        sys.stderr.write(f"input error: {e}\n")
        return 2
    except GraphFormatError as e:
        sys.stderr.write(f"input error: {e}\n")
        return 2
    except (ValueError, FileNotFoundError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


def main():  # console entry point
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
