"""Command-line entry point: ``gridfary {triples,draw,verify,gen,bench}``."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import GraphInputError
from .pipeline import ExitCode, RunConfig, dump_json, load_graph, run_pipeline
from .pythagorean import Variant, first_k_primitive

_VARIANT = {Variant.EQ_ONE: "EqOne", Variant.EQ_ONE_PRIME: "EqOnePrime"}
_TRIPLE_FIELDS = ["index", "m", "n", "variant", "x", "y", "ell"]


def _triples(args, out) -> int:
    if args.count < 0:
        print("input error: --count must be non-negative", file=sys.stderr)
        return ExitCode.INPUT_ERROR
    seq = first_k_primitive(args.count)
    idx = seq.angle_sorted if args.angle_sorted else range(len(seq))
    rows = []
    for i in idx:
        t, p = seq.triples[i], seq.params[i]
        rows.append({"index": i + 1, "m": p.m, "n": p.n, "variant": _VARIANT[p.variant], "x": t.x, "y": t.y, "ell": t.ell})
    if args.format == "csv":
        w = csv.DictWriter(out, fieldnames=_TRIPLE_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        json.dump(rows, out)
        out.write("\n")
    return ExitCode.OK


def _verify(args, out) -> int:
    from .embedder import Drawing
    from .verifier import certify, certify_against_graph

    try:
        try:
            data = json.loads(Path(args.drawing).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise GraphInputError(f"cannot read drawing {args.drawing}: {exc}") from None
        d = Drawing.from_json(data)
        if args.graph:
            report = certify_against_graph(d, load_graph(args.graph), args.profile)
        elif args.profile:
            raise GraphInputError("--profile needs --graph to check bounds")
        else:
            report = certify(d)
    except GraphInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return ExitCode.INPUT_ERROR
    if args.json:
        json.dump(report.to_dict(), out, indent=1)
        out.write("\n")
    else:
        out.write(report.table() + "\n")
    return ExitCode.OK if report.passed else ExitCode.VIOLATION


def _gen(cfg: RunConfig, out) -> int:
    from .generators import generate_random

    try:
        g = generate_random(cfg.kind, cfg.n, cfg.seed, depth_cap=cfg.depth_cap, cycles=cfg.cycles,
                            triangle_fraction=cfg.triangle_fraction, max_cycle_len=cfg.max_cycle_len)
    except GraphInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return ExitCode.INPUT_ERROR
    dump_json(g.to_json(), cfg.output, out)
    return ExitCode.OK


def _bench(args, out) -> int:
    from .bench import bench_bounds, fit_exponent, rows_to_csv

    params = {}
    if args.triangle_fraction is not None:
        params["triangle_fraction"] = args.triangle_fraction
    if args.depth_cap is not None:
        params["depth_cap"] = args.depth_cap
    try:
        rows = bench_bounds(args.kind, args.n, args.trials, args.seed,
                            cycle_density=args.cycle_density, verify=args.verify, **params)
    except GraphInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return ExitCode.INPUT_ERROR
    text = rows_to_csv(rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    if args.fit and len(set(args.n)) > 1:
        print(f"fitted exponent of side vs n: {fit_exponent(rows):.3f}", file=sys.stderr)
    bad = [r for r in rows if r["slack_float"] > 1 or r["passed"] is False]
    return ExitCode.VIOLATION if bad else ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridfary", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)

    t = sub.add_parser("triples", help="list the first K primitive Pythagorean triples")
    t.add_argument("--count", type=int, required=True, metavar="K")
    t.add_argument("--angle-sorted", action="store_true", help="order by increasing slope")
    t.add_argument("--format", choices=["json", "csv"], default="json")

    d = sub.add_parser("draw", help="draw a star, tree or cactus given as graph JSON")
    d.add_argument("graph")
    d.add_argument("-o", "--output", help="drawing JSON path (default: stdout)")
    d.add_argument("--svg", help="also write an SVG rendering here")
    d.add_argument("--root", type=int, help="override the root vertex")
    d.add_argument("--no-verify", action="store_true", help="skip self-verification")

    v = sub.add_parser("verify", help="certify a drawing JSON")
    v.add_argument("drawing")
    v.add_argument("--graph", help="graph JSON the drawing claims to draw")
    v.add_argument("--profile", choices=["star", "tree", "cactus"], help="bound profile (default: drawing's algorithm)")
    v.add_argument("--json", action="store_true", help="print the report as JSON")

    g = sub.add_parser("gen", help="generate a seeded random instance")
    g.add_argument("--kind", choices=["tree", "cactus", "star", "path", "balanced"], default="tree")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--depth-cap", type=int)
    g.add_argument("--cycles", type=int, help="number of cycles (cactus; default random)")
    g.add_argument("--triangle-fraction", type=float, default=0.5)
    g.add_argument("--max-cycle-len", type=int, default=12)
    g.add_argument("-o", "--output")

    b = sub.add_parser("bench", help="measure bounding boxes against the grid bounds (CSV)")
    b.add_argument("--kind", choices=["tree", "cactus", "star", "path", "balanced"], default="tree")
    b.add_argument("--n", type=int, nargs="+", required=True)
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--cycle-density", type=float, help="cycles per vertex (cactus)")
    b.add_argument("--triangle-fraction", type=float)
    b.add_argument("--depth-cap", type=int)
    b.add_argument("--verify", action="store_true", help="also certify every drawing")
    b.add_argument("--fit", action="store_true", help="print the log-log exponent to stderr")
    b.add_argument("-o", "--output")
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.cmd == "triples":
        return int(_triples(args, out))
    if args.cmd == "verify":
        return int(_verify(args, out))
    if args.cmd == "bench":
        return int(_bench(args, out))
    if args.cmd == "gen":
        cfg = RunConfig(subcommand="gen", n=args.n, seed=args.seed, kind=args.kind, depth_cap=args.depth_cap,
                        cycles=args.cycles, triangle_fraction=args.triangle_fraction,
                        max_cycle_len=args.max_cycle_len, output=args.output)
        return int(_gen(cfg, out))
    cfg = RunConfig(subcommand="draw", input=args.graph, output=args.output, svg=args.svg,
                    root=args.root, verify=not args.no_verify)
    return int(run_pipeline(cfg, stdout=out))


if __name__ == "__main__":
    sys.exit(main())
