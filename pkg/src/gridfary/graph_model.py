"""Input graphs, classification, rooting and cactus decomposition.

Rotation systems are given per vertex as the counter-clockwise cyclic order of
its neighbours. The successors of a vertex are taken in that order, starting
right after its reference neighbour (parent, or predecessor on a cycle path).
The drawing places successors at increasing slope, which is exactly the
counter-clockwise order around the vertex, so a given rotation is realized.
Without a rotation system successors are taken by ascending vertex id.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, NamedTuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import GraphInputError, InvariantViolation
from .pythagorean import PythTriple, TripleSequence

__all__ = [
    "GRAPH_FORMAT",
    "GraphClass",
    "InputGraph",
    "RootedTree",
    "Succ",
    "Cycle",
    "CactusDecomposition",
    "Assignment",
    "classify",
    "default_root",
    "root_and_orient",
    "build_rooted_tree",
    "build_cactus",
    "assign_triples",
]

GRAPH_FORMAT = "grid-fary-graph-v1"


class GraphClass(enum.Enum):
    STAR = "star"
    TREE = "tree"
    CACTUS = "cactus"
    UNSUPPORTED = "unsupported"


@dataclass
class InputGraph:
    """A simple undirected graph on vertices ``0 .. n-1``.

    ``rotation`` optionally maps each vertex to the counter-clockwise order of
    its neighbours; ``root`` optionally fixes the root. ``meta`` carries
    free-form annotations (generators record ground-truth stats there).
    """

    n: int
    edges: list[tuple[int, int]]
    rotation: dict[int, list[int]] | None = None
    root: int | None = None
    meta: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphInputError("graph needs at least one vertex")
        seen = set()
        norm = []
        for e in self.edges:
            try:
                u, v = (int(x) for x in e)
            except (TypeError, ValueError):
                raise GraphInputError(f"bad edge {e!r}") from None
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphInputError(f"edge {e!r} has a vertex outside 0..{self.n - 1}")
            if u == v:
                raise GraphInputError(f"self loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphInputError(f"parallel edge {key}")
            seen.add(key)
            norm.append((u, v))
        self.edges = norm
        if self.root is not None and not (0 <= self.root < self.n):
            raise GraphInputError(f"root {self.root} out of range")
        if self.rotation is not None:
            rot = {}
            for v, order in self.rotation.items():
                v = int(v)
                if not (0 <= v < self.n):
                    raise GraphInputError(f"rotation given for unknown vertex {v}")
                rot[v] = [int(u) for u in order]
            adj = self.adjacency
            for v in range(self.n):
                order = rot.get(v)
                if order is None:
                    if adj[v]:
                        raise GraphInputError(f"rotation missing for vertex {v}")
                    rot[v] = []
                elif sorted(order) != adj[v]:
                    raise GraphInputError(f"rotation at {v} is not a permutation of its neighbours")
            self.rotation = rot

    @cached_property
    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for a in adj:
            a.sort()
        return adj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_json(self) -> dict:
        out: dict[str, Any] = {"format": GRAPH_FORMAT, "n": self.n, "edges": [list(e) for e in self.edges]}
        if self.rotation is not None:
            out["rotation"] = {str(v): list(o) for v, o in sorted(self.rotation.items())}
        if self.root is not None:
            out["root"] = self.root
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, data: dict) -> "InputGraph":
        if not isinstance(data, dict):
            raise GraphInputError("graph JSON must be an object")
        fmt = data.get("format", GRAPH_FORMAT)
        if fmt != GRAPH_FORMAT:
            raise GraphInputError(f"unknown graph format {fmt!r}")
        try:
            n = int(data["n"])
            edges = [tuple(e) for e in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphInputError(f"graph JSON needs 'n' and 'edges': {exc}") from None
        rot = data.get("rotation")
        return cls(n, edges, rotation=rot, root=data.get("root"), meta=data.get("meta"))


def _bfs(adj: list[list[int]], root: int) -> tuple[list[int], list[int], list[int]]:
    n = len(adj)
    dist = [-1] * n
    parent = [-1] * n
    dist[root] = 0
    order = [root]
    q = deque([root])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                parent[u] = v
                order.append(u)
                q.append(u)
    return dist, parent, order


def _fundamental_cycles(g: InputGraph, dist: list[int], parent: list[int]) -> list[list[int]] | None:
    """Cycles closed by the non-tree edges of a BFS tree, or ``None`` if two
    of them share an edge (then some edge lies on two cycles).

    Each cycle is returned in cyclic order starting at its vertex closest to
    the BFS root.
    """
    marked = [False] * g.n  # tree edge (v, parent[v]) is keyed by v
    cycles = []
    for a, b in g.edges:
        if parent[a] == b or parent[b] == a:
            continue
        up_a, up_b = [a], [b]
        x, y = a, b
        while x != y:
            if dist[x] >= dist[y]:
                if marked[x]:
                    return None
                marked[x] = True
                x = parent[x]
                up_a.append(x)
            else:
                if marked[y]:
                    return None
                marked[y] = True
                y = parent[y]
                up_b.append(y)
        # up_a: a .. lca, up_b: b .. lca; walk lca -> .. -> a, b -> .. -> lca
        cyc = up_a[::-1] + up_b[:-1]
        cycles.append(cyc)
    return cycles


def classify(g: InputGraph) -> GraphClass:
    """Most specific of star, tree, cactus; ``UNSUPPORTED`` otherwise."""
    dist, parent, _ = _bfs(g.adjacency, 0)
    if min(dist) < 0:
        raise GraphInputError("graph is disconnected")
    m = len(g.edges)
    if m == g.n - 1:
        if g.n <= 2 or max(len(a) for a in g.adjacency) == g.n - 1:
            return GraphClass.STAR
        return GraphClass.TREE
    if _fundamental_cycles(g, dist, parent) is None:
        return GraphClass.UNSUPPORTED
    return GraphClass.CACTUS


def _tree_center(adj: list[list[int]]) -> int:
    dist, _, order = _bfs(adj, 0)
    a = order[-1]
    dist_a, parent_a, order_a = _bfs(adj, a)
    b = order_a[-1]
    path = [b]
    while path[-1] != a:
        path.append(parent_a[path[-1]])
    k = len(path) - 1  # diameter
    centers = {path[k // 2], path[(k + 1) // 2]}
    return min(centers)


def default_root(g: InputGraph) -> int:
    """Vertex of minimum eccentricity, smallest id on ties."""
    if g.root is not None:
        return g.root
    if g.n == 1:
        return 0
    if len(g.edges) == g.n - 1:
        return _tree_center(g.adjacency)
    rows = [u for u, v in g.edges] + [v for u, v in g.edges]
    cols = [v for u, v in g.edges] + [u for u, v in g.edges]
    mat = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))
    ecc = shortest_path(mat, method="D", unweighted=True).max(axis=1)
    return int(np.argmin(ecc))


def _ordered(g: InputGraph, v: int, candidates: set[int] | list[int], reference: int | None) -> list[int]:
    if g.rotation is None:
        return sorted(candidates)
    rot = g.rotation[v]
    if reference is not None:
        k = rot.index(reference)
        rot = rot[k + 1:] + rot[:k + 1]
    cand = set(candidates)
    return [u for u in rot if u in cand]


# ---------------------------------------------------------------------------
# trees


@dataclass
class RootedTree:
    """A tree oriented away from ``root``.

    ``leaves[v]`` is the number of leaves of the subtree at ``v`` and
    ``depth[v]`` its depth (0 at a leaf). ``order`` is a preorder in which
    every subtree occupies ``order[pos[v]:end[v]]``.
    """

    root: int
    parent: list[int]
    children: list[list[int]]
    leaves: list[int]
    depth: list[int]
    order: list[int]
    pos: list[int]
    end: list[int]

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def t(self) -> int:
        return self.leaves[self.root]

    @property
    def d(self) -> int:
        return self.depth[self.root]

    @property
    def budget(self) -> int:
        return self.t


def _preorder(root: int, kids: list[list[int]]) -> tuple[list[int], list[int], list[int]]:
    n = len(kids)
    order: list[int] = []
    pos = [0] * n
    end = [0] * n
    stack = [(root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            end[v] = len(order)
            continue
        pos[v] = len(order)
        order.append(v)
        stack.append((v, True))
        for c in reversed(kids[v]):
            stack.append((c, False))
    return order, pos, end


def build_rooted_tree(g: InputGraph, root: int | None = None) -> RootedTree:
    if len(g.edges) != g.n - 1:
        raise GraphInputError("not a tree")
    r = default_root(g) if root is None else root
    dist, parent, bfs_order = _bfs(g.adjacency, r)
    if min(dist) < 0:
        raise GraphInputError("graph is disconnected")
    children = [[] for _ in range(g.n)]
    for v in bfs_order:
        ref = parent[v] if v != r else None
        kids = [u for u in g.adjacency[v] if u != parent[v]]
        children[v] = _ordered(g, v, kids, ref)
    order, pos, end = _preorder(r, children)
    leaves = [0] * g.n
    depth = [0] * g.n
    for v in reversed(order):
        if children[v]:
            leaves[v] = sum(leaves[c] for c in children[v])
            depth[v] = 1 + max(depth[c] for c in children[v])
        else:
            leaves[v] = 1
    return RootedTree(r, parent, children, leaves, depth, order, pos, end)


# ---------------------------------------------------------------------------
# cacti


class Succ(NamedTuple):
    """A successor component: a child vertex (``is_cycle`` False) or a cycle."""

    is_cycle: bool
    id: int


@dataclass
class Cycle:
    """A cycle with its origin, terminal and the two origin-to-terminal paths.

    ``right`` is drawn with the flatter triple and is never longer than
    ``left``. Both paths are listed from origin to terminal. ``right_cut``
    holds the internal right-path vertices that own a subcactus, in path
    order; ``left_cut`` the same for the left path including the terminal.
    """

    index: int
    origin: int
    terminal: int
    right: list[int]
    left: list[int]
    right_cut: list[int] = field(default_factory=list)
    left_cut: list[int] = field(default_factory=list)
    leaves: int = 0
    cycles: int = 0
    triangles: int = 0
    height: int = 0
    leaves_right: int = 0
    cycles_right: int = 0
    triangles_right: int = 0
    leaves_left: int = 0
    cycles_left: int = 0
    triangles_left: int = 0
    span: tuple[int, int] = (0, 0)

    @property
    def i(self) -> int:
        """Edge count of the left path."""
        return len(self.left) - 1

    @property
    def j(self) -> int:
        """Edge count of the right path."""
        return len(self.right) - 1

    @property
    def length(self) -> int:
        return self.i + self.j

    @property
    def vertices(self) -> list[int]:
        return self.right[:-1] + self.left[:0:-1]

    @property
    def budget(self) -> int:
        return self.leaves + 2 * self.cycles


@dataclass
class CactusDecomposition:
    """BFS-rooted cactus broken into successor components.

    Per-vertex stats refer to the subcactus ``C_v`` of all vertices reachable
    from ``v`` along oriented edges: ``leaves``, ``cycles`` (O), ``triangles``
    (Delta) and ``height``, the largest graph distance from ``v`` inside
    ``C_v``. ``owner[v]`` is the structural parent (the cycle origin for a
    non-origin cycle vertex); ``order``/``pos``/``end`` give a preorder in
    which each ``C_v`` is a contiguous slice.
    """

    n: int
    root: int
    dist: list[int]
    successors: list[list[Succ]]
    cycles: list[Cycle]
    owner: list[int]
    cycle_of: list[int]
    leaves: list[int]
    cycles_below: list[int]
    triangles: list[int]
    height: list[int]
    order: list[int]
    pos: list[int]
    end: list[int]

    @property
    def t(self) -> int:
        return self.leaves[self.root]

    @property
    def o(self) -> int:
        return self.cycles_below[self.root]

    @property
    def delta(self) -> int:
        return self.triangles[self.root]

    @property
    def d(self) -> int:
        return self.height[self.root]

    @property
    def budget(self) -> int:
        return self.t + 2 * self.o

    def block_size(self, v: int) -> int:
        return self.leaves[v] + 2 * self.cycles_below[v]

    def owns_block(self, v: int) -> bool:
        """Root, leaves and cut vertices own a triple block; plain cycle vertices do not."""
        return v == self.root or self.block_size(v) > 0


def build_cactus(g: InputGraph, root: int | None = None) -> CactusDecomposition:
    r = default_root(g) if root is None else root
    adj = g.adjacency
    dist, bfs_parent, _ = _bfs(adj, r)
    if min(dist) < 0:
        raise GraphInputError("graph is disconnected")
    raw = _fundamental_cycles(g, dist, bfs_parent)
    if raw is None:
        raise GraphInputError("graph is not a cactus")

    on_cycle: dict[tuple[int, int], int] = {}
    cycles_at: dict[int, list[int]] = {}
    for idx, cyc in enumerate(raw):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            on_cycle[(min(a, b), max(a, b))] = idx
        cycles_at.setdefault(cyc[0], []).append(idx)

    n = g.n
    successors: list[list[Succ]] = [[] for _ in range(n)]
    owner = [-1] * n
    cycle_of = [-1] * n
    cycles: list[Cycle | None] = [None] * len(raw)
    ref: list[int | None] = [None] * n

    stack = [r]
    visit = []
    while stack:
        v = stack.pop()
        visit.append(v)
        # successor neighbours: bridge children and both neighbours on own cycles
        comp_of: dict[int, Succ] = {}
        for u in adj[v]:
            key = (min(u, v), max(u, v))
            c = on_cycle.get(key)
            if c is None:
                if dist[u] == dist[v] + 1:
                    comp_of[u] = Succ(False, u)
            elif raw[c][0] == v:
                comp_of[u] = Succ(True, c)
        start = ref[v]
        if start is None and g.rotation is not None:
            start = _root_start(g.rotation[v], comp_of)
        succ: list[Succ] = []
        for u in _ordered(g, v, list(comp_of), start):
            s = comp_of[u]
            if s.is_cycle:
                if any(x == s for x in succ):
                    continue
                cycles[s.id] = _split_cycle(raw[s.id], s.id, first=u)
            succ.append(s)
        if start is None and g.rotation is not None and len(succ) == 1 and succ[0].is_cycle:
            first = _cycle_first_by_rotation(g, raw[succ[0].id])
            if first is not None:
                cycles[succ[0].id] = _split_cycle(raw[succ[0].id], succ[0].id, first)
        successors[v] = succ
        for s in reversed(succ):
            if not s.is_cycle:
                owner[s.id] = v
                ref[s.id] = v
                stack.append(s.id)
                continue
            cyc = cycles[s.id]
            for k in range(1, len(cyc.right) - 1):
                w = cyc.right[k]
                ref[w] = cyc.right[k - 1]
            for k in range(1, len(cyc.left)):
                w = cyc.left[k]
                ref[w] = cyc.left[k - 1]
            for w in reversed(cyc.vertices[1:]):
                owner[w] = v
                cycle_of[w] = s.id
                stack.append(w)

    # preorder over the structural tree, cycles expanded in place
    kids: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for s in successors[v]:
            if s.is_cycle:
                kids[v].extend(cycles[s.id].vertices[1:])
            else:
                kids[v].append(s.id)
    order, pos, end = _preorder(r, kids)

    leaves = [0] * n
    cyc_below = [0] * n
    tri = [0] * n
    height = [0] * n
    for v in reversed(order):
        if not successors[v]:
            if len(adj[v]) <= 1:
                leaves[v] = 1
            continue
        for s in successors[v]:
            if not s.is_cycle:
                u = s.id
                leaves[v] += leaves[u]
                cyc_below[v] += cyc_below[u]
                tri[v] += tri[u]
                height[v] = max(height[v], 1 + height[u])
                continue
            c = cycles[s.id]
            _cycle_stats(c, leaves, cyc_below, tri, height, successors)
            c.span = (pos[c.vertices[1]], end[c.vertices[-1]])
            leaves[v] += c.leaves
            cyc_below[v] += c.cycles
            tri[v] += c.triangles
            height[v] = max(height[v], c.height)

    return CactusDecomposition(
        n=n, root=r, dist=dist, successors=successors, cycles=cycles, owner=owner,
        cycle_of=cycle_of, leaves=leaves, cycles_below=cyc_below, triangles=tri,
        height=height, order=order, pos=pos, end=end,
    )


def _root_start(rot: list[int], comp_of: dict[int, Succ]) -> int | None:
    # begin the root's order between two different components so that no
    # cycle has its two root neighbours split across the wrap-around
    for k in range(len(rot)):
        if comp_of[rot[k - 1]] != comp_of[rot[k]]:
            return rot[k - 1]
    return None


def _cycle_first_by_rotation(g: InputGraph, cyc: list[int]) -> int | None:
    # A root whose only neighbours are one cycle cannot orient it; use the
    # first cycle vertex with outside neighbours. Walking the cycle with the
    # right path first keeps the cycle's interior on the left, so at every
    # vertex the next cycle vertex directly precedes the previous one.
    length = len(cyc)
    for k in range(1, length):
        w = cyc[k]
        rot = g.rotation[w]
        if len(rot) < 3:
            continue
        a, b = cyc[k - 1], cyc[(k + 1) % length]
        ia = rot.index(a)
        if rot[ia - 1] == b:
            return cyc[1]
        if rot[(ia + 1) % len(rot)] == b:
            return cyc[-1]
    return None


def _split_cycle(cyc: list[int], index: int, first: int) -> Cycle:
    # walk the cycle starting with the neighbour that comes first in the
    # successor order; that walk's first floor(L/2) edges form the right path
    s = cyc[0]
    walk = cyc if cyc[1] == first else [s] + cyc[:0:-1]
    length = len(cyc)
    j = length // 2
    right = walk[: j + 1]
    left = [s] + walk[:j - 1:-1]
    return Cycle(index=index, origin=s, terminal=walk[j], right=right, left=left)


def _cycle_stats(c: Cycle, leaves, cyc_below, tri, height, successors) -> None:
    has = lambda w: bool(successors[w])  # noqa: E731
    c.right_cut = [w for w in c.right[1:-1] if has(w)]
    c.left_cut = [w for w in c.left[1:] if has(w)]
    c.leaves_right = sum(leaves[w] for w in c.right_cut)
    c.cycles_right = sum(cyc_below[w] for w in c.right_cut)
    c.triangles_right = sum(tri[w] for w in c.right_cut)
    c.leaves_left = sum(leaves[w] for w in c.left_cut)
    c.cycles_left = sum(cyc_below[w] for w in c.left_cut)
    c.triangles_left = sum(tri[w] for w in c.left_cut)
    c.leaves = c.leaves_right + c.leaves_left
    c.cycles = 1 + c.cycles_right + c.cycles_left
    c.triangles = int(c.length == 3) + c.triangles_right + c.triangles_left
    length = c.length
    h = 0
    for k, w in enumerate(c.vertices):
        if k:
            h = max(h, min(k, length - k) + height[w])
    c.height = h


def root_and_orient(g: InputGraph) -> Union[RootedTree, CactusDecomposition]:
    """Root ``g`` and orient it: a :class:`RootedTree` for trees (stars
    included), a :class:`CactusDecomposition` for cacti."""
    kind = classify(g)
    if kind in (GraphClass.STAR, GraphClass.TREE):
        return build_rooted_tree(g)
    if kind is GraphClass.CACTUS:
        return build_cactus(g)
    raise GraphInputError("graph is not a cactus")


# ---------------------------------------------------------------------------
# triple assignment


@dataclass
class Assignment:
    """Contiguous blocks of the angle-sorted triple list.

    ``block[v] = (start, size)`` for every vertex that owns triples;
    ``cycle_block[c]`` is the block of a whole cycle component and
    ``cycle_pair[c]`` the indices of its flat and steep triple.
    """

    triples: list[PythTriple]
    block: dict[int, tuple[int, int]]
    cycle_block: dict[int, tuple[int, int]] = field(default_factory=dict)
    cycle_pair: dict[int, tuple[int, int]] = field(default_factory=dict)

    def triples_for(self, v: int) -> list[PythTriple]:
        start, size = self.block[v]
        return self.triples[start:start + size]

    def first(self, v: int) -> PythTriple:
        return self.triples[self.block[v][0]]


def assign_triples(decomp: RootedTree | CactusDecomposition, seq: TripleSequence) -> Assignment:
    """Hand every successor component a contiguous run of angle-sorted triples."""
    budget = decomp.budget
    if len(seq) < budget:
        raise InvariantViolation(f"need {budget} triples, sequence has {len(seq)}")
    triples = seq.prefix(budget).angle_sorted_triples()
    if isinstance(decomp, RootedTree):
        return _assign_tree(decomp, triples)
    return _assign_cactus(decomp, triples)


def _assign_tree(tree: RootedTree, triples: list[PythTriple]) -> Assignment:
    block = {tree.root: (0, tree.t)}
    for v in tree.order:
        start, size = block[v]
        cur = start
        for c in tree.children[v]:
            block[c] = (cur, tree.leaves[c])
            cur += tree.leaves[c]
        if tree.children[v] and cur != start + size:
            raise InvariantViolation(f"children of {v} use {cur - start} of {size} triples")
    return Assignment(triples, block)


def _assign_cactus(dec: CactusDecomposition, triples: list[PythTriple]) -> Assignment:
    block = {dec.root: (0, dec.budget)}
    cyc_block: dict[int, tuple[int, int]] = {}
    pair: dict[int, tuple[int, int]] = {}
    for v in dec.order:
        if v not in block:
            continue
        start, size = block[v]
        cur = start
        for s in dec.successors[v]:
            if not s.is_cycle:
                sz = dec.block_size(s.id)
                block[s.id] = (cur, sz)
                cur += sz
                continue
            c = dec.cycles[s.id]
            cyc_block[c.index] = (cur, c.budget)
            k = cur
            for w in c.right_cut:
                block[w] = (k, dec.block_size(w))
                k += dec.block_size(w)
            pair[c.index] = (k, k + 1)
            k += 2
            for w in reversed(c.left_cut):
                block[w] = (k, dec.block_size(w))
                k += dec.block_size(w)
            if k != cur + c.budget:
                raise InvariantViolation(f"cycle {c.index} block mismatch")
            cur = k
        if dec.successors[v] and cur != start + size:
            raise InvariantViolation(f"successors of {v} use {cur - start} of {size} triples")
    return Assignment(triples, block, cyc_block, pair)
