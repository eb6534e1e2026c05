"""Straight-line drawings with integer vertices and integer edge lengths.

Stars use all four quadrants; trees and cacti stay in the first quadrant and
give every successor component its own angular range of triples.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from .errors import GraphInputError, InvariantViolation
from .graph_model import (
    Assignment,
    CactusDecomposition,
    Cycle,
    GraphClass,
    InputGraph,
    RootedTree,
    classify,
)
from .pythagorean import PythTriple, angle_sorted_prefix, slope_compare

__all__ = [
    "DRAWING_FORMAT",
    "EdgeRecord",
    "Drawing",
    "Cone",
    "draw_star",
    "draw_tree",
    "cycle_offsets",
    "draw_cycle_canonical",
    "draw_cactus",
    "star_triple_count",
    "star_center",
    "drawn_edges_match",
    "ccw_neighbours",
    "rotation_realized",
]

DRAWING_FORMAT = "grid-fary-drawing-v1"

Point = tuple[int, int]


class EdgeRecord(NamedTuple):
    u: int
    v: int
    dx: int
    dy: int
    length: int


def _edge(u: int, v: int, pu: Point, pv: Point) -> EdgeRecord:
    dx, dy = pv[0] - pu[0], pv[1] - pu[1]
    sq = dx * dx + dy * dy
    r = math.isqrt(sq)
    if r == 0 or r * r != sq:
        raise InvariantViolation(f"edge {u}-{v} with displacement ({dx}, {dy}) has no integer length")
    return EdgeRecord(u, v, dx, dy, r)


@dataclass
class Drawing:
    positions: dict[int, Point]
    edges: list[EdgeRecord]
    algorithm: str
    triples_used: int
    root: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def bbox(self) -> tuple[int, int, int, int]:
        xs = [p[0] for p in self.positions.values()]
        ys = [p[1] for p in self.positions.values()]
        return (min(xs), min(ys), max(xs), max(ys))

    @property
    def width(self) -> int:
        x0, _, x1, _ = self.bbox
        return x1 - x0

    @property
    def height(self) -> int:
        _, y0, _, y1 = self.bbox
        return y1 - y0

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "format": DRAWING_FORMAT,
            "algorithm": self.algorithm,
            "positions": {str(v): [p[0], p[1]] for v, p in sorted(self.positions.items())},
            "edges": [[e.u, e.v, e.length] for e in self.edges],
            "bbox": list(self.bbox),
            "triples_used": self.triples_used,
        }
        if self.root is not None:
            out["root"] = self.root
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Drawing":
        """Parse a drawing. Edge displacements are recomputed from positions;
        the recorded lengths are kept as given so a verifier can check them."""
        if not isinstance(data, dict) or data.get("format") != DRAWING_FORMAT:
            raise GraphInputError(f"not a {DRAWING_FORMAT} document")
        try:
            pos = {int(v): (int(p[0]), int(p[1])) for v, p in data["positions"].items()}
            edges = []
            for u, v, ln in data["edges"]:
                u, v = int(u), int(v)
                pu, pv = pos[u], pos[v]
                edges.append(EdgeRecord(u, v, pv[0] - pu[0], pv[1] - pu[1], int(ln)))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphInputError(f"malformed drawing: {exc!r}") from None
        if not pos:
            raise GraphInputError("drawing has no vertices")
        return cls(
            positions=pos,
            edges=edges,
            algorithm=str(data.get("algorithm", "")),
            triples_used=int(data.get("triples_used", 0)),
            root=data.get("root"),
            notes=list(data.get("notes", [])),
        )

    def same_geometry(self, other: "Drawing") -> bool:
        return self.positions == other.positions and sorted(self.edges) == sorted(other.edges)


def _cross(a: Point, b: Point) -> int:
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class Cone:
    """Closed wedge at ``apex`` between directions ``low`` and ``high``.

    Both directions point into the open first quadrant and ``low`` is not
    steeper than ``high``. When they are parallel the cone is a ray.
    """

    apex: Point
    low: Point
    high: Point

    def __post_init__(self) -> None:
        for d in (self.low, self.high):
            if d[0] <= 0 or d[1] <= 0:
                raise ValueError(f"cone direction {d} not in the open first quadrant")
        if _cross(self.low, self.high) < 0:
            raise ValueError("cone low ray is steeper than its high ray")

    @classmethod
    def of(cls, apex: Point, triples: list[PythTriple]) -> "Cone":
        return cls(apex, (triples[0].x, triples[0].y), (triples[-1].x, triples[-1].y))

    def contains(self, p: Point) -> bool:
        q = (p[0] - self.apex[0], p[1] - self.apex[1])
        if _cross(self.low, q) < 0 or _cross(q, self.high) < 0:
            return False
        return q[0] * (self.low[0] + self.high[0]) + q[1] * (self.low[1] + self.high[1]) >= 0

    def on_boundary(self, p: Point) -> bool:
        q = (p[0] - self.apex[0], p[1] - self.apex[1])
        return q != (0, 0) and (_cross(self.low, q) == 0 or _cross(q, self.high) == 0)


# ---------------------------------------------------------------------------
# stars


def star_triple_count(n: int) -> int:
    """Triples a star on ``n`` vertices needs: ceil((n - 1) / 4)."""
    return -(-(n - 1) // 4)


def star_center(g: InputGraph) -> int:
    """The vertex adjacent to all others (the root, or 0, when n <= 2)."""
    if g.n <= 2:
        return g.root if g.root is not None else 0
    for v in range(g.n):
        if g.degree(v) == g.n - 1:
            return v
    raise GraphInputError("graph is not a star")


def draw_star(g: InputGraph, triples: list[PythTriple] | None = None) -> Drawing:
    """Center at the origin, leaves split into four runs of at most
    ``ceil((n-1)/4)``; run ``q`` reuses the angle-sorted triples rotated by
    ``q`` quarter turns counter-clockwise.
    """
    if classify(g) is not GraphClass.STAR:
        raise GraphInputError("draw_star needs a star")
    c = star_center(g)
    if g.n == 1:
        return Drawing({c: (0, 0)}, [], "star", 0, root=c)
    k = star_triple_count(g.n)
    if triples is None:
        triples = angle_sorted_prefix(k)
    elif len(triples) != k:
        raise InvariantViolation(f"star needs exactly {k} angle-sorted triples, got {len(triples)}")
    leaves = g.rotation[c] if g.rotation is not None else sorted(g.adjacency[c])
    pos: dict[int, Point] = {c: (0, 0)}
    edges = []
    for idx, v in enumerate(leaves):
        q, i = divmod(idx, k)
        x, y = triples[i].x, triples[i].y
        for _ in range(q):
            x, y = -y, x
        pos[v] = (x, y)
        edges.append(_edge(c, v, (0, 0), (x, y)))
    return Drawing(pos, edges, "star", k, root=c)


# ---------------------------------------------------------------------------
# trees


def draw_tree(tree: RootedTree, assignment: Assignment) -> Drawing:
    """Each child sits at its parent plus the first triple of its block."""
    pos: dict[int, Point] = {tree.root: (0, 0)}
    edges = []
    for v in tree.order:
        px, py = pos[v]
        for c in tree.children[v]:
            t = assignment.first(c)
            pos[c] = (px + t.x, py + t.y)
            edges.append(EdgeRecord(v, c, t.x, t.y, t.ell))
    edges.sort()
    return Drawing(pos, edges, "tree", tree.budget, root=tree.root)


# ---------------------------------------------------------------------------
# cycles


def cycle_offsets(i: int, j: int, flat: PythTriple, steep: PythTriple) -> tuple[list[Point], list[Point]]:
    """Canonical coordinates of a cycle whose origin sits at ``(0, 0)``.

    ``i`` and ``j`` are the edge counts of the left and right path. Returns
    the points of the right path and of the left path, each from origin to
    terminal.
    """
    if slope_compare(flat, steep) >= 0:
        raise InvariantViolation(f"flat triple {tuple(flat)} is not flatter than {tuple(steep)}")
    fx, fy = flat.x, flat.y
    sx, sy = steep.x, steep.y
    if i == j and j >= 2:
        right = [(k * fx, k * fy) for k in range(j)]
        right.append(((j - 1) * fx + sx, (j - 1) * fy + sy))
        left = [(0, 0)] + [(sx + k * fx, sy + k * fy) for k in range(i)]
    elif i == j + 1 and j > 1:
        right = [(k * fx, k * fy) for k in range(j)]
        right.append(((j - 1) * fx + 2 * sx, (j - 1) * fy + 2 * sy))
        left = [(0, 0), (sx, sy)] + [(2 * sx + k * fx, 2 * sy + k * fy) for k in range(i - 1)]
    elif i == 2 and j == 1:
        g = math.lcm(fy, sy)
        up, over = g // sy, g // fy
        right = [(0, 0), (over * fx, over * fy)]
        left = [(0, 0), (up * sx, up * sy), (over * fx, over * fy)]
    else:
        raise InvariantViolation(f"no canonical drawing for path lengths i={i}, j={j}")
    return right, left


def draw_cycle_canonical(cycle: Cycle, flat: PythTriple, steep: PythTriple) -> Drawing:
    """Canonical drawing of a single cycle with its origin at the origin."""
    right, left = cycle_offsets(cycle.i, cycle.j, flat, steep)
    pos: dict[int, Point] = {}
    edges = _place_cycle(cycle, right, left, (0, 0), pos)
    edges.sort()
    return Drawing(pos, edges, "cycle", 2, root=cycle.origin)


def _place_cycle(cycle: Cycle, right: list[Point], left: list[Point], at: Point, pos: dict[int, Point]) -> list[EdgeRecord]:
    ax, ay = at
    for path, pts in ((cycle.right, right), (cycle.left, left)):
        for v, (x, y) in zip(path, pts):
            pos[v] = (ax + x, ay + y)
    if pos[cycle.right[-1]] != pos[cycle.left[-1]]:
        raise InvariantViolation(f"cycle {cycle.index}: paths end at different points")
    edges = []
    for path in (cycle.right, cycle.left):
        for a, b in zip(path, path[1:]):
            edges.append(_edge(a, b, pos[a], pos[b]))
    return edges


# ---------------------------------------------------------------------------
# cacti


def draw_cactus(dec: CactusDecomposition, assignment: Assignment) -> Drawing:
    """Child vertices as in trees; child cycles in canonical form using their
    two reserved triples; subcacti hang off their cut vertex unchanged."""
    pos: dict[int, Point] = {dec.root: (0, 0)}
    edges: list[EdgeRecord] = []
    triples = assignment.triples
    for v in dec.order:
        at = pos[v]
        for s in dec.successors[v]:
            if not s.is_cycle:
                t = assignment.first(s.id)
                pos[s.id] = (at[0] + t.x, at[1] + t.y)
                edges.append(EdgeRecord(v, s.id, t.x, t.y, t.ell))
                continue
            c = dec.cycles[s.id]
            fi, si = assignment.cycle_pair[c.index]
            right, left = cycle_offsets(c.i, c.j, triples[fi], triples[si])
            edges.extend(_place_cycle(c, right, left, at, pos))
    edges.sort()
    return Drawing(pos, edges, "cactus", dec.budget, root=dec.root)


def drawn_edges_match(g: InputGraph, d: Drawing) -> bool:
    """Whether ``d`` has exactly the vertices and edges of ``g``."""
    if set(d.positions) != set(range(g.n)):
        return False
    want = {(min(u, v), max(u, v)) for u, v in g.edges}
    got = [(min(e.u, e.v), max(e.u, e.v)) for e in d.edges]
    return len(got) == len(want) and set(got) == want


def _half(p: Point) -> int:
    return 0 if p[1] > 0 or (p[1] == 0 and p[0] > 0) else 1


def _ccw_cmp(a: Point, b: Point) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    c = _cross(a, b)
    return (c < 0) - (c > 0)


def ccw_neighbours(g: InputGraph, d: Drawing, v: int) -> list[int]:
    """Neighbours of ``v`` in counter-clockwise order of their drawn edges,
    starting from the positive x-axis."""
    px, py = d.positions[v]
    rel = {u: (d.positions[u][0] - px, d.positions[u][1] - py) for u in g.adjacency[v]}
    return sorted(rel, key=functools.cmp_to_key(lambda a, b: _ccw_cmp(rel[a], rel[b])))


def rotation_realized(g: InputGraph, d: Drawing) -> bool:
    """Whether every vertex of ``d`` sees its neighbours in the cyclic
    order given by ``g.rotation`` (trivially true without a rotation)."""
    if g.rotation is None:
        return True
    for v in range(g.n):
        got, want = ccw_neighbours(g, d, v), g.rotation[v]
        if got and got != want[want.index(got[0]):] + want[:want.index(got[0])]:
            return False
    return True
