"""End-to-end drawing: classify, decompose, assign triples, draw, self-verify."""
from __future__ import annotations

import enum
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, TextIO

from .embedder import Drawing, star_center, draw_cactus, draw_star, draw_tree, rotation_realized
from .errors import GraphInputError, InvariantViolation, UnsupportedGraphError
from .graph_model import (
    Assignment,
    CactusDecomposition,
    GraphClass,
    InputGraph,
    RootedTree,
    assign_triples,
    build_cactus,
    build_rooted_tree,
    classify,
)
from .pythagorean import first_k_primitive
from .verifier import CertReport, Profile, certify, grid_bound

__all__ = [
    "ExitCode",
    "RunConfig",
    "DrawResult",
    "OverflowRefusal",
    "max_coord_bits",
    "draw_graph",
    "load_graph",
    "run_pipeline",
]

DEFAULT_COORD_BITS = 62


class ExitCode(enum.IntEnum):
    OK = 0
    VIOLATION = 1
    INPUT_ERROR = 2
    UNSUPPORTED = 3
    OVERFLOW = 4


class OverflowRefusal(GraphInputError):
    """The worst-case coordinate bound exceeds the configured bit width."""


@dataclass
class RunConfig:
    subcommand: str = "draw"
    input: str | None = None
    output: str | None = None
    svg: str | None = None
    seed: int = 0
    n: int | None = None
    kind: str = "tree"
    depth_cap: int | None = None
    cycles: int | None = None
    triangle_fraction: float = 0.5
    max_cycle_len: int = 12
    root: int | None = None
    fmt: str = "json"
    verify: bool = True


@dataclass
class DrawResult:
    drawing: Drawing
    profile: Profile
    decomp: InputGraph | RootedTree | CactusDecomposition
    assignment: Assignment | None
    report: CertReport | None = None


def max_coord_bits() -> int:
    raw = os.environ.get("GRIDFARY_MAX_COORD_BITS")
    if raw is None:
        return DEFAULT_COORD_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise GraphInputError(f"GRIDFARY_MAX_COORD_BITS must be an integer, got {raw!r}") from None
    if bits < 1:
        raise GraphInputError("GRIDFARY_MAX_COORD_BITS must be positive")
    return bits


def _refuse_overflow(bound: Fraction, bits: int) -> None:
    limit = (1 << bits) - 1
    if bound > limit:
        raise OverflowRefusal(
            f"worst-case coordinate {float(bound):.4g} exceeds the {bits}-bit threshold {limit}; "
            "raise GRIDFARY_MAX_COORD_BITS to allow it"
        )


def draw_graph(g: InputGraph, root: int | None = None, verify: bool = True, bits: int | None = None) -> DrawResult:
    """Draw a star, tree or cactus and, unless ``verify`` is false, certify it.

    Raises :class:`UnsupportedGraphError` for other graphs and
    :class:`OverflowRefusal` when the worst-case bound does not fit ``bits``.
    """
    kind = classify(g)
    if kind is GraphClass.UNSUPPORTED:
        raise UnsupportedGraphError("graph is not a star, tree or cactus")
    bits = max_coord_bits() if bits is None else bits
    if root is None:
        root = g.root

    if kind is GraphClass.STAR and root is not None and root != star_center(g):
        # an explicit root away from the center asks for the rooted-tree drawing
        kind = GraphClass.TREE
    if kind is GraphClass.STAR:
        _refuse_overflow(grid_bound(Profile.STAR, n=g.n), bits)
        result = DrawResult(draw_star(g), Profile.STAR, g, None)
    elif kind is GraphClass.TREE:
        tree = build_rooted_tree(g, root)
        _refuse_overflow(grid_bound(Profile.TREE, t=tree.t, d=tree.d), bits)
        a = assign_triples(tree, first_k_primitive(tree.budget))
        result = DrawResult(draw_tree(tree, a), Profile.TREE, tree, a)
    else:
        dec = build_cactus(g, root)
        _refuse_overflow(grid_bound(Profile.CACTUS, t=dec.t, d=dec.d, o=dec.o, delta=dec.delta), bits)
        a = assign_triples(dec, first_k_primitive(dec.budget))
        result = DrawResult(draw_cactus(dec, a), Profile.CACTUS, dec, a)

    if not rotation_realized(g, result.drawing):
        result.drawing.notes.append("given rotation system is not outerplane; drawn with an outerplane one")
    if verify:
        result.report = certify(result.drawing, result.decomp, result.profile, result.assignment)
    return result


def load_graph(path: str | Path) -> InputGraph:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GraphInputError(f"{path} is not valid JSON: {exc}") from None
    return InputGraph.from_json(data)


def dump_json(obj: Any, path: str | None, stdout: TextIO) -> None:
    text = json.dumps(obj, separators=(",", ":"))
    if path is None:
        stdout.write(text + "\n")
    else:
        Path(path).write_text(text + "\n")


def run_pipeline(cfg: RunConfig, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """Read ``cfg.input``, draw it and write the drawing JSON (and SVG).

    Returns an :class:`ExitCode`. Any violation found by self-verification
    aborts with its witness on stderr and nothing is written.
    """
    from .svg import to_svg

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if cfg.input is None:
            raise GraphInputError("no input graph given")
        g = load_graph(cfg.input)
        result = draw_graph(g, cfg.root, verify=cfg.verify)
    except OverflowRefusal as exc:
        stderr.write(f"refused: {exc}\n")
        return ExitCode.OVERFLOW
    except UnsupportedGraphError as exc:
        stderr.write(f"unsupported: {exc}\n")
        return ExitCode.UNSUPPORTED
    except GraphInputError as exc:
        stderr.write(f"input error: {exc}\n")
        return ExitCode.INPUT_ERROR
    except InvariantViolation as exc:
        stderr.write(f"internal invariant failed: {exc}\n")
        return ExitCode.VIOLATION
    if result.report is not None and not result.report.passed:
        stderr.write("self-verification failed:\n")
        stderr.write(json.dumps([v.to_dict() for v in result.report.violations[:10]], indent=1) + "\n")
        return ExitCode.VIOLATION
    dump_json(result.drawing.to_json(), cfg.output, stdout)
    if cfg.svg:
        Path(cfg.svg).write_text(to_svg(result.drawing))
    return ExitCode.OK
