import numpy as np
import pytest

from gridfary.embedder import (
    Cone,
    Drawing,
    ccw_neighbours,
    cycle_offsets,
    draw_cactus,
    draw_cycle_canonical,
    draw_star,
    draw_tree,
    drawn_edges_match,
    rotation_realized,
    star_triple_count,
)
from gridfary.errors import GraphInputError, InvariantViolation
from gridfary.generators import generate_random
from gridfary.graph_model import InputGraph, assign_triples, build_cactus, build_rooted_tree
from gridfary.pythagorean import PythTriple, first_k_primitive

FLAT = PythTriple(4, 3, 5)
STEEP = PythTriple(3, 4, 5)


def cycle_graph(n):
    return InputGraph(n, [(k, (k + 1) % n) for k in range(n)], root=0)


def cactus_drawing(g, root=None):
    dec = build_cactus(g, root)
    return draw_cactus(dec, assign_triples(dec, first_k_primitive(dec.budget)))


def tree_drawing(g, root=None):
    t = build_rooted_tree(g, root)
    return draw_tree(t, assign_triples(t, first_k_primitive(t.budget)))


class TestStar:
    def test_five(self):
        d = draw_star(InputGraph(5, [(0, v) for v in range(1, 5)]))
        assert d.positions == {0: (0, 0), 1: (3, 4), 2: (-4, 3), 3: (-3, -4), 4: (4, -3)}
        assert d.triples_used == 1 and d.algorithm == "star"

    def test_thirteen_uses_three_triples(self):
        d = draw_star(InputGraph(13, [(0, v) for v in range(1, 13)]))
        assert d.triples_used == 3
        # first quadrant run is the three angle-sorted triples
        assert [d.positions[v] for v in (1, 2, 3)] == [(4, 3), (3, 4), (5, 12)]
        assert d.positions[4] == (-3, 4)

    def test_counts(self):
        assert [star_triple_count(n) for n in (2, 5, 6, 13, 14)] == [1, 1, 2, 3, 4]

    def test_tiny(self):
        assert draw_star(InputGraph(1, [])).positions == {0: (0, 0)}
        d = draw_star(InputGraph(2, [(0, 1)]))
        assert d.positions == {0: (0, 0), 1: (3, 4)}

    def test_rejects_non_star(self):
        with pytest.raises(GraphInputError):
            draw_star(InputGraph(4, [(0, 1), (1, 2), (2, 3)]))

    def test_leaves_follow_rotation(self):
        g = InputGraph(4, [(0, 1), (0, 2), (0, 3)], rotation={0: [3, 1, 2], 1: [0], 2: [0], 3: [0]})
        d = draw_star(g)
        assert d.positions[3] == (3, 4)
        assert rotation_realized(g, d)


class TestTree:
    def test_path_from_end(self):
        d = tree_drawing(InputGraph(3, [(0, 1), (1, 2)], root=0))
        assert d.positions == {0: (0, 0), 1: (3, 4), 2: (6, 8)}
        assert [e.length for e in d.edges] == [5, 5]

    def test_children_get_increasing_slopes(self):
        g = InputGraph(4, [(0, 1), (0, 2), (0, 3)], root=0)
        d = tree_drawing(g)
        # first three triples (3,4),(4,3),(5,12) in angle order
        assert [d.positions[v] for v in (1, 2, 3)] == [(4, 3), (3, 4), (5, 12)]

    def test_single_vertex(self):
        d = tree_drawing(InputGraph(1, []))
        assert d.positions == {0: (0, 0)} and d.edges == []

    def test_first_quadrant_and_integer(self):
        for s in range(10):
            d = tree_drawing(generate_random("tree", 100, s))
            assert all(x >= 0 and y >= 0 for x, y in d.positions.values())
            assert all(e.dx ** 2 + e.dy ** 2 == e.length ** 2 for e in d.edges)


class TestCanonicalCycles:
    def test_four_cycle(self):
        d = draw_cycle_canonical(build_cactus(cycle_graph(4)).cycles[0], FLAT, STEEP)
        assert d.positions == {0: (0, 0), 1: (4, 3), 3: (3, 4), 2: (7, 7)}

    def test_five_cycle(self):
        d = draw_cycle_canonical(build_cactus(cycle_graph(5)).cycles[0], FLAT, STEEP)
        assert d.positions == {0: (0, 0), 1: (4, 3), 2: (10, 11), 4: (3, 4), 3: (6, 8)}

    def test_triangle(self):
        d = draw_cycle_canonical(build_cactus(cycle_graph(3)).cycles[0], FLAT, STEEP)
        assert d.positions == {0: (0, 0), 1: (16, 12), 2: (9, 12)}
        assert sorted(e.length for e in d.edges) == [7, 15, 20]

    def test_twelve_cycle_parallelogram(self):
        right, left = cycle_offsets(6, 6, FLAT, STEEP)
        assert right == [(4 * k, 3 * k) for k in range(6)] + [(23, 19)]
        assert left == [(0, 0)] + [(3 + 4 * k, 4 + 3 * k) for k in range(6)]

    def test_bad_shapes(self):
        with pytest.raises(InvariantViolation):
            cycle_offsets(3, 1, FLAT, STEEP)
        with pytest.raises(InvariantViolation):
            cycle_offsets(2, 2, STEEP, FLAT)

    @pytest.mark.parametrize("L", range(3, 40))
    def test_every_length_closes_with_integer_edges(self, L):
        seq = first_k_primitive(30).angle_sorted_triples()
        for a, b in [(0, 1), (3, 4), (10, 20), (28, 29)]:
            right, left = cycle_offsets(L - L // 2, L // 2, seq[a], seq[b])
            assert right[-1] == left[-1]
            pts = right + left[1:-1]
            assert len(set(pts)) == L


class TestCactus:
    def test_tree_input_matches_tree_drawing(self):
        for s in range(15):
            g = generate_random("tree", 40 + s, s)
            a, b = tree_drawing(g), cactus_drawing(g)
            assert a.positions == b.positions and a.edges == b.edges

    def test_edges_match_graph(self):
        for s in range(15):
            g = generate_random("cactus", 50, s)
            assert drawn_edges_match(g, cactus_drawing(g))

    def test_bowtie(self):
        g = InputGraph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)], root=0)
        d = cactus_drawing(g)
        assert d.triples_used == 4
        assert all(e.dx ** 2 + e.dy ** 2 == e.length ** 2 for e in d.edges)


class TestDrawingJson:
    def test_round_trip(self):
        d = cactus_drawing(generate_random("cactus", 30, 7))
        e = Drawing.from_json(d.to_json())
        assert e.same_geometry(d) and e.root == d.root and e.triples_used == d.triples_used
        assert d.to_json()["bbox"] == list(d.bbox)

    def test_malformed(self):
        with pytest.raises(GraphInputError):
            Drawing.from_json({"format": "nope"})
        with pytest.raises(GraphInputError):
            Drawing.from_json({"format": "grid-fary-drawing-v1", "positions": {"0": [0, 0]}, "edges": [[0, 1, 5]]})


class TestCone:
    def test_contains(self):
        c = Cone((1, 1), (4, 3), (3, 4))
        assert c.contains((1, 1)) and c.contains((8, 8)) and c.contains((5, 4))
        assert not c.contains((10, 1)) and not c.contains((0, 0))
        assert c.on_boundary((5, 4)) and not c.on_boundary((8, 8))

    def test_ray(self):
        c = Cone((0, 0), (3, 4), (3, 4))
        assert c.contains((6, 8)) and not c.contains((7, 8)) and not c.contains((-3, -4))

    def test_invalid(self):
        with pytest.raises(ValueError):
            Cone((0, 0), (3, 4), (4, 3))
        with pytest.raises(ValueError):
            Cone((0, 0), (0, 1), (3, 4))


class TestRotation:
    def test_ccw_order(self):
        g = InputGraph(5, [(0, v) for v in range(1, 5)])
        d = draw_star(g)
        assert ccw_neighbours(g, d, 0) == [1, 2, 3, 4]

    def test_mirrored_cactus_rotation_realized(self):
        for s in range(20):
            g0 = generate_random("cactus", 30, s)
            d0 = cactus_drawing(g0)
            rot = {v: ccw_neighbours(g0, d0, v)[::-1] for v in range(g0.n)}
            g = InputGraph(g0.n, g0.edges, rotation=rot)
            assert rotation_realized(g, cactus_drawing(g))

    def test_relabelled_rotation_realized(self):
        for s in range(20):
            g0 = generate_random("cactus", 25, s)
            perm = np.random.default_rng(s).permutation(g0.n)
            inv = np.argsort(perm)
            gp = InputGraph(g0.n, [(int(perm[u]), int(perm[v])) for u, v in g0.edges])
            dp = cactus_drawing(gp)
            rot = {v: [int(inv[u]) for u in ccw_neighbours(gp, dp, int(perm[v]))] for v in range(g0.n)}
            g = InputGraph(g0.n, g0.edges, rotation=rot)
            assert rotation_realized(g, cactus_drawing(g))

    def test_inner_rotation_not_realized(self):
        # the triangle's two neighbours at 0 separated by pendants on both sides
        rot = {0: [1, 3, 2, 4], 1: [2, 0], 2: [0, 1], 3: [0], 4: [0]}
        g = InputGraph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)], rotation=rot, root=0)
        assert not rotation_realized(g, cactus_drawing(g))
