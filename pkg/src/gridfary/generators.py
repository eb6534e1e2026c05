"""Seeded random instances: paths, stars, trees, depth-capped trees and cacti.

Randomness comes from ``numpy.random.default_rng`` (PCG64), so a seed fixes
the instance on every platform numpy supports.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import GraphInputError
from .graph_model import InputGraph, build_cactus, build_rooted_tree

__all__ = ["Kind", "generate_random", "instance_stats"]


class Kind(enum.Enum):
    TREE = "tree"
    CACTUS = "cactus"
    STAR = "star"
    PATH = "path"
    BALANCED = "balanced"


def _tree_edges(rng: np.random.Generator, n: int, depth_cap: int | None) -> list[tuple[int, int]]:
    edges = []
    depth = [0]
    # vertices still allowed to take children
    open_ = [0]
    for v in range(1, n):
        if not open_:
            raise GraphInputError(f"depth cap {depth_cap} leaves no room for {n} vertices")
        p = open_[int(rng.integers(len(open_)))]
        edges.append((p, v))
        depth.append(depth[p] + 1)
        if depth_cap is None or depth[v] < depth_cap:
            open_.append(v)
    return edges


def _cactus_edges(
    rng: np.random.Generator,
    n: int,
    cycles: int | None,
    triangle_fraction: float,
    max_cycle_len: int,
) -> tuple[list[tuple[int, int]], int]:
    if n == 1:
        if cycles:
            raise GraphInputError("a single vertex has no room for a cycle")
        return [], 0
    if cycles is None:
        cycles = int(rng.integers(1, max(1, (n - 1) // 4) + 1)) if n >= 3 else 0
    if cycles < 0 or 2 * cycles > n - 1:
        raise GraphInputError(f"{cycles} cycles do not fit in {n} vertices (need 2 per cycle plus a root)")
    if max_cycle_len < 3:
        raise GraphInputError("max_cycle_len must be at least 3")
    spare = n - 1 - 2 * cycles
    # each cycle of length L consumes L - 1 new vertices; start every cycle as a triangle
    lengths = [3] * cycles
    for k in range(cycles):
        if rng.random() < triangle_fraction:
            continue
        extra = min(spare, max_cycle_len - 3, int(rng.integers(1, max_cycle_len - 2)))
        lengths[k] += extra
        spare -= extra
    ops = ["c"] * cycles + ["p"] * spare
    rng.shuffle(ops)
    edges = []
    nxt = 1
    ci = 0
    for op in ops:
        at = int(rng.integers(nxt))
        if op == "p":
            edges.append((at, nxt))
            nxt += 1
            continue
        ring = [at] + list(range(nxt, nxt + lengths[ci] - 1))
        nxt += lengths[ci] - 1
        ci += 1
        edges.extend(zip(ring, ring[1:] + ring[:1]))
    assert nxt == n
    return edges, cycles


def instance_stats(g: InputGraph) -> dict[str, int]:
    """Ground-truth parameters of a tree or cactus: t, d, o, delta."""
    if len(g.edges) == g.n - 1:
        tr = build_rooted_tree(g)
        return {"t": tr.t, "d": tr.d, "o": 0, "delta": 0}
    dec = build_cactus(g)
    return {"t": dec.t, "d": dec.d, "o": dec.o, "delta": dec.delta}


def generate_random(
    kind: Kind | str,
    n: int,
    seed: int,
    depth_cap: int | None = None,
    cycles: int | None = None,
    triangle_fraction: float = 0.5,
    max_cycle_len: int = 12,
) -> InputGraph:
    """Deterministic random instance of the requested kind.

    Trees attach each new vertex to a uniformly random earlier vertex (of
    depth below ``depth_cap`` if given). ``balanced`` is a tree capped at
    depth ``ceil(log2 n)``. Cacti shuffle ``cycles`` cycle insertions with
    pendant-edge insertions, each hung off a random existing vertex; a cycle
    is a triangle with probability ``triangle_fraction`` and otherwise has
    length up to ``max_cycle_len``. Paths and stars ignore the seed.
    """
    kind = Kind(kind)
    if n < 1:
        raise GraphInputError("n must be at least 1")
    if depth_cap is not None and depth_cap < 1 and n > 1:
        raise GraphInputError("depth cap must be positive")
    rng = np.random.default_rng(seed)
    meta: dict = {"kind": kind.value, "seed": int(seed)}
    if kind is Kind.PATH:
        edges = [(v, v + 1) for v in range(n - 1)]
    elif kind is Kind.STAR:
        edges = [(0, v) for v in range(1, n)]
    elif kind is Kind.TREE:
        edges = _tree_edges(rng, n, depth_cap)
    elif kind is Kind.BALANCED:
        cap = max(1, math.ceil(math.log2(n))) if n > 1 else None
        edges = _tree_edges(rng, n, cap if depth_cap is None else min(cap, depth_cap))
    else:
        edges, cyc = _cactus_edges(rng, n, cycles, triangle_fraction, max_cycle_len)
        meta["cycles"] = cyc
    g = InputGraph(n, edges)
    meta.update(instance_stats(g))
    g.meta = meta
    return g
