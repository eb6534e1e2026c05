"""Exact certification of integral straight-line drawings.

All predicates are integer sign tests. The all-pairs segment scan is run on
numpy ``int64`` arrays only while every intermediate provably fits (|coord| <
2**30); larger drawings fall back to Python integers.
"""
from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Union

import numpy as np

from .embedder import Cone, Drawing, star_triple_count
from .errors import GraphInputError
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
from .pythagorean import PI_SQ_UPPER, first_k_primitive

__all__ = [
    "ViolationKind",
    "Violation",
    "CertReport",
    "Profile",
    "orientation",
    "segments_intersect",
    "grid_bound",
    "check_integrality",
    "check_planarity",
    "check_bounds",
    "certify",
    "certify_against_graph",
]

_SAFE = 1 << 30
_CHUNK = 256
MARGINAL_SLACK = Fraction(1, 10**9)


class ViolationKind(enum.Enum):
    NON_INTEGER_LENGTH = "NonIntegerLength"
    CROSSING = "Crossing"
    COLLINEAR_OVERLAP = "CollinearOverlap"
    CONE_BREACH = "ConeBreach"
    DISTANCE_BOUND = "DistanceBound"
    GRID_BOUND = "GridBound"
    BUDGET_MISMATCH = "BudgetMismatch"


class Profile(enum.Enum):
    STAR = "star"
    TREE = "tree"
    CACTUS = "cactus"


@dataclass
class Violation:
    kind: ViolationKind
    witness: dict[str, Any]

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind.value, "witness": _jsonable(self.witness)}


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


@dataclass
class CertReport:
    """Result of :func:`certify`.

    ``checks`` maps each category that ran to its pass flag. ``slack`` holds
    exact observed/bound ratios (squared for distance bounds). ``marginal``
    keeps grid-bound excesses within the precision of the pi^2 constant;
    they are reported but do not fail the drawing.
    """

    checks: dict[str, bool] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    slack: dict[str, Fraction] = field(default_factory=dict)
    marginal: list[Violation] = field(default_factory=list)
    boundary_incidences: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": dict(self.checks),
            "counts": dict(self.counts),
            "slack": {k: {"exact": _jsonable(v), "approx": float(v)} for k, v in self.slack.items()},
            "boundary_incidences": self.boundary_incidences,
            "violations": [v.to_dict() for v in self.violations],
            "marginal": [v.to_dict() for v in self.marginal],
        }

    def table(self) -> str:
        lines = [f"{'check':<14} {'result':<6}"]
        for name, ok in self.checks.items():
            lines.append(f"{name:<14} {'pass' if ok else 'FAIL':<6}")
        for name, v in self.slack.items():
            lines.append(f"slack {name:<20} {float(v):.6g}")
        for v in self.violations[:20]:
            lines.append(f"violation {v.kind.value}: {_jsonable(v.witness)}")
        if len(self.violations) > 20:
            lines.append(f"... {len(self.violations) - 20} more violations")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# predicates


def orientation(a, b, c) -> int:
    """Sign of the turn a -> b -> c (1 left, -1 right, 0 collinear)."""
    s = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (s > 0) - (s < 0)


def segments_intersect(p1, q1, p2, q2) -> tuple[bool, tuple[int, int, int, int]]:
    """Whether closed segments p1q1 and p2q2 share a point, with the four
    orientation signs as evidence."""
    o1 = orientation(p1, q1, p2)
    o2 = orientation(p1, q1, q2)
    o3 = orientation(p2, q2, p1)
    o4 = orientation(p2, q2, q1)
    signs = (o1, o2, o3, o4)
    if o1 * o2 > 0 or o3 * o4 > 0:
        return False, signs
    if o1 == o2 == o3 == o4 == 0:
        # collinear: overlap iff projections overlap on both axes
        for k in (0, 1):
            if max(min(p1[k], q1[k]), min(p2[k], q2[k])) > min(max(p1[k], q1[k]), max(p2[k], q2[k])):
                return False, signs
    return True, signs


# ---------------------------------------------------------------------------
# integrality


def check_integrality(d: Drawing) -> list[Violation]:
    out = []
    for e in d.edges:
        sq = e.dx * e.dx + e.dy * e.dy
        r = math.isqrt(sq)
        if r * r != sq or r != e.length or r == 0:
            out.append(Violation(ViolationKind.NON_INTEGER_LENGTH, {
                "edge": [e.u, e.v],
                "displacement": [e.dx, e.dy],
                "squared_length": sq,
                "isqrt": r,
                "recorded_length": e.length,
            }))
    return out


# ---------------------------------------------------------------------------
# planarity


def _array(values, safe: bool) -> np.ndarray:
    return np.array(values, dtype=np.int64 if safe else object)


def _max_abs(d: Drawing) -> int:
    return max(max(abs(p[0]), abs(p[1])) for p in d.positions.values())


def _primitive_dir(dx: int, dy: int) -> tuple[int, int]:
    g = math.gcd(dx, dy)
    return (dx // g, dy // g)


def check_planarity(d: Drawing) -> list[Violation]:
    """Exact all-pairs test.

    Pairs of edges sharing an endpoint are violations only if they leave
    that endpoint in the same direction. Any other pair must not share a
    single point. Distinct vertices must occupy distinct points.
    """
    out: list[Violation] = []
    at: dict[tuple[int, int], int] = {}
    for v in sorted(d.positions):
        p = d.positions[v]
        if p in at:
            out.append(Violation(ViolationKind.CROSSING, {
                "reason": "coincident vertices", "vertices": [at[p], v], "point": list(p)}))
        else:
            at[p] = v

    dirs: dict[int, dict[tuple[int, int], int]] = defaultdict(dict)
    for k, e in enumerate(d.edges):
        if e.dx == 0 and e.dy == 0:
            continue
        for a, dx, dy in ((e.u, e.dx, e.dy), (e.v, -e.dx, -e.dy)):
            key = _primitive_dir(dx, dy)
            other = dirs[a].get(key)
            if other is not None:
                f = d.edges[other]
                out.append(Violation(ViolationKind.COLLINEAR_OVERLAP, {
                    "reason": "edges leave a shared endpoint in the same direction",
                    "vertex": a, "edges": [[f.u, f.v], [e.u, e.v]], "direction": list(key)}))
            else:
                dirs[a][key] = k

    m = len(d.edges)
    if m < 2:
        return out
    pos = d.positions
    big = _max_abs(d)
    safe = big < _SAFE
    fits = big < (1 << 62)
    U = np.array([e.u for e in d.edges], dtype=np.int64)
    V = np.array([e.v for e in d.edges], dtype=np.int64)
    P = [pos[e.u] for e in d.edges]
    Q = [pos[e.v] for e in d.edges]
    PA = _array(P, fits)
    QA = _array(Q, fits)
    lo = np.minimum(PA, QA)
    hi = np.maximum(PA, QA)
    idx = np.arange(m)
    for a in range(0, m, _CHUNK):
        b = min(a + _CHUNK, m)
        r = slice(a, b)
        c = slice(a, m)
        mask = idx[c][None, :] > idx[r][:, None]
        mask &= lo[r, 0][:, None] <= hi[c, 0][None, :]
        mask &= lo[c, 0][None, :] <= hi[r, 0][:, None]
        mask &= lo[r, 1][:, None] <= hi[c, 1][None, :]
        mask &= lo[c, 1][None, :] <= hi[r, 1][:, None]
        ur, vr, uc, vc = U[r][:, None], V[r][:, None], U[c][None, :], V[c][None, :]
        mask &= (ur != uc) & (ur != vc) & (vr != uc) & (vr != vc)
        ii, jj = np.nonzero(mask)
        if not len(ii):
            continue
        ii += a
        jj += a
        if safe:
            ii, jj = _orientation_filter(PA, QA, ii, jj)
        for i, j in zip(ii.tolist(), jj.tolist()):
            hit, signs = segments_intersect(P[i], Q[i], P[j], Q[j])
            if not hit:
                continue
            ei, ej = d.edges[i], d.edges[j]
            kind = ViolationKind.COLLINEAR_OVERLAP if signs == (0, 0, 0, 0) else ViolationKind.CROSSING
            out.append(Violation(kind, {
                "edges": [[ei.u, ei.v], [ej.u, ej.v]],
                "segments": [[list(P[i]), list(Q[i])], [list(P[j]), list(Q[j])]],
                "orientations": list(signs),
                "proper": all(signs),
            }))
    return out


def _orientation_filter(PA, QA, ii, jj):
    """Keep candidate pairs whose orientation signs allow contact (int64)."""
    p1, q1, p2, q2 = PA[ii], QA[ii], PA[jj], QA[jj]

    def orient(a, b, c):
        return np.sign((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))

    o1 = orient(p1, q1, p2)
    o2 = orient(p1, q1, q2)
    o3 = orient(p2, q2, p1)
    o4 = orient(p2, q2, q1)
    keep = (o1 * o2 <= 0) & (o3 * o4 <= 0)
    return ii[keep], jj[keep]


# ---------------------------------------------------------------------------
# bounds

_N, _D = PI_SQ_UPPER.numerator, PI_SQ_UPPER.denominator


_FORMULAS = {
    Profile.STAR: "(pi^2 (n+2) + 3) / 3",
    Profile.TREE: "2 pi^2 t d / 3",
    Profile.CACTUS: "(2 pi^2/3)(d+o)(t+2o) + delta 2 ((pi^2/3)(t+2o))^2",
}


def grid_bound(profile: Profile | str, n: int = 0, t: int = 0, d: int = 0, o: int = 0, delta: int = 0) -> Fraction:
    """Bounding-box side allowed for a profile, with pi^2 rounded up.

    Stars use ``n``; trees ``t`` and ``d``; cacti all of ``t, d, o, delta``.
    """
    num, den = _grid_fraction(Profile(profile), n, t, d, o, delta)
    return Fraction(num, den)


def _grid_fraction(profile: Profile, n: int, t: int, d: int, o: int, delta: int) -> tuple[int, int]:
    if profile is Profile.STAR:
        return _N * (n + 2) + 3 * _D, 3 * _D
    if profile is Profile.TREE:
        return 2 * _N * t * d, 3 * _D
    T = t + 2 * o
    # common denominator 9 D^2
    return 6 * (d + o) * _N * T * _D + 2 * delta * _N * _N * T * T, 9 * _D * _D


def _grid_ok(extent: int, num: int, den: int) -> bool:
    """extent <= ceil(num / den)."""
    return (extent - 1) * den < num


class _BoundState:
    def __init__(self, d: Drawing):
        self.violations: list[Violation] = []
        self.marginal: list[Violation] = []
        self.slack: dict[str, Fraction] = {}
        self.boundary = 0
        self.counts: dict[str, int] = defaultdict(int)
        self.d = d

    def ratio(self, name: str, value: Fraction) -> None:
        if name not in self.slack or value > self.slack[name]:
            self.slack[name] = value


def _grid(state: _BoundState, profile: Profile, **params: int) -> None:
    d = state.d
    num, den = _grid_fraction(profile, **{k: params.get(k, 0) for k in ("n", "t", "d", "o", "delta")})
    formula = _FORMULAS[profile]
    bound = Fraction(num, den)
    for axis, extent in (("width", d.width), ("height", d.height)):
        state.ratio("grid", Fraction(extent) / bound if bound else Fraction(extent))
        if _grid_ok(extent, num, den):
            continue
        v = Violation(ViolationKind.GRID_BOUND, {
            "axis": axis, "extent": extent, "bound": bound, "formula": formula, "bbox": list(d.bbox)})
        if bound and Fraction(extent) / bound - 1 < MARGINAL_SLACK:
            state.marginal.append(v)
        else:
            state.violations.append(v)


def _budget(state: _BoundState, expected: int, check_dirs: bool) -> None:
    d = state.d
    if d.triples_used != expected:
        state.violations.append(Violation(ViolationKind.BUDGET_MISMATCH, {
            "recorded": d.triples_used, "expected": expected}))
    if not check_dirs:
        return
    seen = set()
    for e in d.edges:
        dx, dy = e.dx, e.dy
        while not (dx > 0 and dy >= 0):  # rotate into the first quadrant
            dx, dy = dy, -dx
            if dx == 0 and dy == 0:
                break
        if dy == 0:
            continue
        seen.add(_primitive_dir(dx, dy))
    if len(seen) != expected:
        state.violations.append(Violation(ViolationKind.BUDGET_MISMATCH, {
            "distinct_directions": len(seen), "expected": expected}))


class _Points:
    """Vertex coordinates in preorder, as an array when that is exact."""

    def __init__(self, d: Drawing, order: list[int], limit: int):
        self.order = order
        self.xy = [d.positions[v] for v in order]
        self.safe = _max_abs(d) < _SAFE and limit < _SAFE
        self.arr = _array(self.xy, self.safe) if self.safe else None

    def max_dist_sq(self, a: int, b: int, apex) -> tuple[int, int]:
        """Largest squared distance from ``apex`` over preorder slice [a, b)."""
        if self.arr is not None and b - a > 32:
            q = self.arr[a:b] - np.array(apex, dtype=np.int64)
            sq = q[:, 0] * q[:, 0] + q[:, 1] * q[:, 1]
            k = int(np.argmax(sq))
            return int(sq[k]), self.order[a + k]
        best, who = -1, -1
        for k in range(a, b):
            x, y = self.xy[k]
            s = (x - apex[0]) ** 2 + (y - apex[1]) ** 2
            if s > best:
                best, who = s, self.order[k]
        return best, who

    def cone_misses(self, a: int, b: int, cone: Cone) -> tuple[list[int], int]:
        """Vertices of slice [a, b) outside ``cone`` and the number on its rays."""
        if self.arr is not None and b - a > 32:
            q = self.arr[a:b] - np.array(cone.apex, dtype=np.int64)
            lo, hi = cone.low, cone.high
            c1 = lo[0] * q[:, 1] - lo[1] * q[:, 0]
            c2 = q[:, 0] * hi[1] - q[:, 1] * hi[0]
            dot = q[:, 0] * (lo[0] + hi[0]) + q[:, 1] * (lo[1] + hi[1])
            bad = (c1 < 0) | (c2 < 0) | (dot < 0)
            nonzero = (q[:, 0] != 0) | (q[:, 1] != 0)
            on_ray = int(np.count_nonzero(nonzero & ~bad & ((c1 == 0) | (c2 == 0))))
            return [self.order[a + k] for k in np.nonzero(bad)[0].tolist()], on_ray
        misses, on_ray = [], 0
        for k in range(a, b):
            p = self.xy[k]
            if not cone.contains(p):
                misses.append(self.order[k])
            elif cone.on_boundary(p):
                on_ray += 1
        return misses, on_ray


def _cone(state: _BoundState, pts: _Points, a: int, b: int, cone: Cone, label: dict) -> None:
    state.counts["cones"] += 1
    misses, on_ray = pts.cone_misses(a, b, cone)
    state.boundary += on_ray
    if misses:
        state.violations.append(Violation(ViolationKind.CONE_BREACH, {
            **label, "apex": list(cone.apex), "low": list(cone.low), "high": list(cone.high),
            "outside": misses[:10], "outside_count": len(misses)}))


def _distance(state: _BoundState, pts: _Points, a: int, b: int, apex, lhs_scale: int, rhs: int, label: dict) -> None:
    """Assert lhs_scale * dist^2 <= rhs^2 for every vertex in slice [a, b)."""
    state.counts["distance_checks"] += 1
    sq, who = pts.max_dist_sq(a, b, apex)
    if rhs:
        state.ratio("distance_sq", Fraction(lhs_scale * sq, rhs * rhs))
    if lhs_scale * sq > rhs * rhs:
        state.violations.append(Violation(ViolationKind.DISTANCE_BOUND, {
            **label, "farthest": who, "dist_sq": sq, "bound_sq": Fraction(rhs * rhs, lhs_scale)}))


def _mismatch(d: Drawing, n: int, root: int | None) -> None:
    if set(d.positions) != set(range(n)):
        raise GraphInputError("drawing vertices do not match the decomposition")
    if root is not None and d.root is not None and d.root != root:
        raise GraphInputError(f"drawing is rooted at {d.root}, decomposition at {root}")


def _bounds(d: Drawing, decomp, profile: Profile, assignment: Assignment | None) -> _BoundState:
    state = _BoundState(d)
    if profile is Profile.STAR:
        n = decomp.n
        _mismatch(d, n, None)
        # (pi^2 (n + 2) + 3) / 3
        _grid(state, Profile.STAR, n=n)
        _budget(state, star_triple_count(n) if n > 1 else 0, n > 1)
        return state

    if isinstance(decomp, InputGraph):
        root = d.root
        decomp = build_rooted_tree(decomp, root) if profile is Profile.TREE else build_cactus(decomp, root)
    _mismatch(d, decomp.n, decomp.root)
    if assignment is None:
        assignment = assign_triples(decomp, first_k_primitive(decomp.budget))
    T = decomp.budget
    limit = max((max(t.x, t.y) for t in assignment.triples), default=0)
    pts = _Points(d, decomp.order, limit)
    root_pt = d.positions[decomp.root]
    if root_pt != (0, 0):
        state.violations.append(Violation(ViolationKind.DISTANCE_BOUND, {
            "reason": "root not at the origin", "root": decomp.root, "position": list(root_pt)}))

    if profile is Profile.TREE:
        if not isinstance(decomp, RootedTree):
            raise GraphInputError("tree profile needs a rooted tree")
        t, depth = decomp.t, decomp.d
        # bbox side <= 2 pi^2 t d / 3
        _grid(state, Profile.TREE, t=t, d=depth)
        _budget(state, t, decomp.n > 1)
        for v in decomp.order:
            if not decomp.children[v]:
                continue
            a, b = decomp.pos[v], decomp.end[v]
            apex = d.positions[v]
            _cone(state, pts, a, b, Cone.of(apex, assignment.triples_for(v)), {"vertex": v})
            # dist <= depth(T_v) * 2 pi^2 t / 3
            _distance(state, pts, a, b, apex, 9 * _D * _D, 2 * _N * t * decomp.depth[v], {"vertex": v})
        return state

    if not isinstance(decomp, CactusDecomposition):
        raise GraphInputError("cactus profile needs a cactus decomposition")
    dd, o, delta = decomp.d, decomp.o, decomp.delta
    _grid(state, Profile.CACTUS, t=decomp.t, d=dd, o=o, delta=delta)
    _budget(state, T, decomp.n > 1)
    for v in decomp.order:
        if not decomp.successors[v]:
            continue
        a, b = decomp.pos[v], decomp.end[v]
        apex = d.positions[v]
        _cone(state, pts, a, b, Cone.of(apex, assignment.triples_for(v)), {"vertex": v})
        h, oc, tri = decomp.height[v], decomp.cycles_below[v], decomp.triangles[v]
        rhs = 6 * (h + oc) * _N * T * _D + 2 * tri * _N * _N * T * T
        _distance(state, pts, a, b, apex, 81 * _D**4, rhs, {"vertex": v})
    for c in decomp.cycles:
        start, size = assignment.cycle_block[c.index]
        apex = d.positions[c.origin]
        a, b = c.span
        _cone(state, pts, a, b, Cone.of(apex, assignment.triples[start:start + size]), {"cycle": c.index})
        # cycle vertices only: ceil(len/2) * 2 pi^2 T / 3, or 2 (pi^2 T / 3)^2 for triangles
        for w in c.vertices[1:]:
            k = decomp.pos[w]
            if c.length >= 4:
                _distance(state, pts, k, k + 1, apex, 9 * _D * _D, 2 * _N * T * (-(-c.length // 2)),
                          {"cycle": c.index, "vertex": w})
            else:
                _distance(state, pts, k, k + 1, apex, 81 * _D**4, 2 * _N * _N * T * T,
                          {"cycle": c.index, "vertex": w})
    return state


def check_bounds(d: Drawing, decomp, profile: Profile | str, assignment: Assignment | None = None) -> list[Violation]:
    """Grid, distance, cone and budget checks for one drawing profile.

    ``decomp`` is the rooted tree or cactus decomposition the drawing was
    built from (an :class:`InputGraph` is accepted and decomposed with the
    drawing's root). For the star profile only its vertex count is used.
    """
    return _bounds(d, decomp, Profile(profile), assignment).violations


def certify(
    d: Drawing,
    decomp: Union[InputGraph, RootedTree, CactusDecomposition, None] = None,
    profile: Profile | str | None = None,
    assignment: Assignment | None = None,
) -> CertReport:
    report = CertReport()
    integ = check_integrality(d)
    report.checks["integrality"] = not integ
    report.violations += integ
    plan = check_planarity(d)
    report.checks["planarity"] = not plan
    report.violations += plan
    report.counts["vertices"] = len(d.positions)
    report.counts["edges"] = len(d.edges)
    if decomp is not None and profile is not None:
        state = _bounds(d, decomp, Profile(profile), assignment)
        kinds = {v.kind for v in state.violations}
        report.checks["grid"] = ViolationKind.GRID_BOUND not in kinds
        report.checks["distance"] = ViolationKind.DISTANCE_BOUND not in kinds
        report.checks["cones"] = ViolationKind.CONE_BREACH not in kinds
        report.checks["budget"] = ViolationKind.BUDGET_MISMATCH not in kinds
        report.violations += state.violations
        report.marginal += state.marginal
        report.slack.update(state.slack)
        report.counts.update(state.counts)
        report.boundary_incidences = state.boundary
    return report


def certify_against_graph(d: Drawing, g: InputGraph, profile: Profile | str | None = None) -> CertReport:
    """Certify ``d`` as a drawing of ``g``; the profile defaults to the
    drawing's algorithm tag, else to the graph's class."""
    from .embedder import drawn_edges_match

    if not drawn_edges_match(g, d):
        raise GraphInputError("drawing does not have the graph's vertices and edges")
    if profile is None:
        if d.algorithm in {p.value for p in Profile}:
            profile = d.algorithm
        else:
            kind = classify(g)
            if kind is GraphClass.UNSUPPORTED:
                return certify(d)
            profile = kind.value
    return certify(d, g, profile)
