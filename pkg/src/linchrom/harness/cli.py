"""Command-line entry point: ``linchrom <subcommand> ...``.

Exit status: 0 on success, 1 when a verification (or pipeline) fails, 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .. import exact
from ..colorings import format_colouring, parse_colouring, random_colouring
from ..gridcore import (
    GridGraph,
    build_pseudogrid,
    format_graph,
    format_spec,
    parse_graph,
    parse_spec,
    plain_pseudogrid,
    random_spec,
)
from ..witness.packing import census_array, object_cells, random_maximal_packing
from ..witness.params import PipelineParams, StageError
from ..witness.pipeline import build_witness, format_witness, parse_witness
from .experiment import (
    ExperimentConfig,
    colouring_rng,
    host_rng,
    make_instance,
    reverify,
    rows_csv,
    run_experiment,
    summary_csv,
)
from .sweep import KINDS, sweep


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str, parser: argparse.ArgumentParser) -> str:
    try:
        return Path(path).read_text()
    except OSError as err:
        parser.error(f"cannot read {path}: {err.strerror}")


def _host(args, parser):
    if args.spec:
        try:
            return build_pseudogrid(parse_spec(_read(args.spec, parser)))
        except ValueError as err:
            parser.error(f"--spec: {err}")
    return plain_pseudogrid(args.k)


def cmd_gen_grid(args, parser) -> int:
    _emit(format_graph(plain_pseudogrid(args.k, args.b or args.k).adjacency), args.out)
    return 0


def cmd_gen_pseudogrid(args, parser) -> int:
    spec = random_spec(args.k, args.b or args.k, host_rng(args.seed), args.max_subdiv, args.q_prob, args.max_path_length)
    _emit(format_spec(spec), args.out)
    return 0


def cmd_colour_random(args, parser) -> int:
    pg = _host(args, parser)
    phi = random_colouring(pg.vertices(), args.colours, colouring_rng(args.seed))
    _emit(format_colouring(phi, args.colours), args.out)
    return 0


def _instance(args, parser):
    pg = _host(args, parser)
    if args.colouring:
        try:
            phi, _c = parse_colouring(_read(args.colouring, parser))
        except ValueError as err:
            parser.error(f"--colouring: {err}")
        if set(phi) != set(pg.owner):
            parser.error("--colouring does not colour exactly the host's vertices")
    elif args.spec:
        phi = random_colouring(pg.vertices(), args.colours, colouring_rng(args.seed))
    else:
        pg, phi = make_instance(args.k, args.colours, args.seed)
    return pg, phi


def cmd_witness(args, parser) -> int:
    pg, phi = _instance(args, parser)
    try:
        params = PipelineParams(args.r, args.d, args.budget, args.seed)
    except ValueError as err:
        parser.error(str(err))
    try:
        rep = build_witness(pg, phi, params)
    except StageError as err:
        print(f"witness: {err}", file=sys.stderr)
        print("telemetry: " + " ".join(f"{k}={v}" for k, v in err.telemetry.items()), file=sys.stderr)
        return 1
    _emit(format_witness(rep), args.out)
    return 0


def cmd_verify(args, parser) -> int:
    try:
        wf = parse_witness(_read(args.witness, parser))
    except ValueError as err:
        print(f"verify: malformed witness: {err}", file=sys.stderr)
        return 1
    args.k, args.colours, args.seed = wf.k, wf.c, wf.seed
    pg, phi = _instance(args, parser)
    ok = wf.verified and reverify(pg, phi, wf.path)
    print("verified" if ok else "rejected")
    return 0 if ok else 1


def cmd_exact(args, parser) -> int:
    try:
        n, edges = parse_graph(_read(args.graph, parser))
        g = exact.SmallGraph.from_edges(n, edges)
        value = {"treedepth": exact.treedepth, "chicen": exact.chi_cen, "chilin": exact.chi_lin}[args.what](g)
    except ValueError as err:
        parser.error(str(err))
    print(value)
    return 0


def cmd_experiment(args, parser) -> int:
    try:
        ks = tuple(int(x) for x in args.k.split(","))
        cfg = ExperimentConfig(
            ks, args.trials, args.seed, args.colours, args.divisor, args.r, args.d, args.budget,
            args.host, args.timing, Path(args.out) if args.out else None,
        )
    except ValueError as err:
        parser.error(f"--k/--trials/--host: {err}")
    rows = run_experiment(cfg)
    if cfg.out is None:
        sys.stdout.write(rows_csv(rows))
    sys.stdout.write(summary_csv(rows))
    return 0


def cmd_packing_census(args, parser) -> int:
    g = GridGraph(args.k, args.k)
    cells = object_cells(g)
    rng = np.random.default_rng(args.seed)
    worst = 0
    for _ in range(args.trials):
        worst = max(worst, census_array(random_maximal_packing(g, args.r, rng, cells), args.r, g))
    print(f"trials {args.trials} max_census {worst}")
    return 1 if args.r >= 10 and worst > 16 else 0


def cmd_sweep(args, parser) -> int:
    bad = 0
    for a in args.a:
        if a < 5:
            parser.error("--a values must be at least 5")
        for kind in args.kind:
            res = sweep(a, kind, args.seed, inside_edges=not args.vertex_terminals)
            print(f"a={a} kind={kind} cases={res.cases} valid={res.valid} " + " ".join(f"{k}={v}" for k, v in sorted(res.strategies.items())))
            bad += res.cases - res.valid
    return 1 if bad else 0


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linchrom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=True, seed=True, out=True):
        if k:
            p.add_argument("--k", type=int, default=64)
        if seed:
            p.add_argument("--seed", type=_u64, default=0)
        if out:
            p.add_argument("--out")

    p = sub.add_parser("gen-grid", help="plain k x b grid as an edge list")
    common(p, seed=False)
    p.add_argument("--b", type=int)
    p.set_defaults(func=cmd_gen_grid)

    p = sub.add_parser("gen-pseudogrid", help="random pseudogrid recipe")
    common(p)
    p.add_argument("--b", type=int)
    p.add_argument("--max-subdiv", type=int, default=2)
    p.add_argument("--q-prob", type=float, default=0.3)
    p.add_argument("--max-path-length", type=int, default=3)
    p.set_defaults(func=cmd_gen_pseudogrid)

    p = sub.add_parser("colour-random", help="uniform random colouring of a host")
    common(p)
    p.add_argument("--colours", type=int, required=True)
    p.add_argument("--spec")
    p.set_defaults(func=cmd_colour_random)

    for name, func, helptext in (
        ("witness", cmd_witness, "search for an uncentred path"),
        ("verify", cmd_verify, "re-check a witness file"),
    ):
        p = sub.add_parser(name, help=helptext)
        if name == "witness":
            common(p)
            p.add_argument("--colours", type=int, default=4)
            p.add_argument("--r", type=int, default=9)
            p.add_argument("--d", type=int, default=14)
            p.add_argument("--budget", type=int, default=64)
        else:
            p.add_argument("witness")
        p.add_argument("--spec")
        p.add_argument("--colouring")
        p.set_defaults(func=func)

    p = sub.add_parser("exact", help="brute-force invariants of a small graph")
    p.add_argument("what", choices=["chilin", "chicen", "treedepth"])
    p.add_argument("graph")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("experiment", help="seeded batch of witness searches")
    p.add_argument("--k", default="64", help="comma-separated grid sizes")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--colours", type=int, help="fixed colour count (default k // divisor)")
    p.add_argument("--divisor", type=int, default=32)
    p.add_argument("--r", type=int, default=9)
    p.add_argument("--d", type=int, default=14)
    p.add_argument("--budget", type=int, default=64)
    p.add_argument("--host", choices=["plain", "pseudo", "mixed"], default="plain")
    p.add_argument("--timing", action="store_true", help="fill wall_ms (makes output non-reproducible)")
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("packing-census", help="census of random maximal packings")
    p.add_argument("--k", type=int, default=200)
    p.add_argument("--r", type=int, default=10)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=_u64, default=0)
    p.set_defaults(func=cmd_packing_census)

    p = sub.add_parser("sweep", help="exhaustive two-target routing sweep on small pseudogrids")
    p.add_argument("--a", type=int, nargs="+", default=[5])
    p.add_argument("--kind", nargs="+", choices=list(KINDS), default=list(KINDS))
    p.add_argument("--vertex-terminals", action="store_true", help="skip terminals inside subdivided boundary edges")
    p.add_argument("--seed", type=_u64, default=0)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    k = getattr(args, "k", None)
    if isinstance(k, int) and k < 1:
        parser.error("--k must be positive")
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
