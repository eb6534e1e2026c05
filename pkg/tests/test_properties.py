"""End-to-end invariants over generated instances."""
from hypothesis import HealthCheck, given, settings, strategies as st

from gridfary.embedder import Drawing, draw_cactus, draw_tree, drawn_edges_match
from gridfary.generators import generate_random
from gridfary.graph_model import assign_triples, build_cactus, build_rooted_tree
from gridfary.pipeline import draw_graph
from gridfary.pythagorean import first_k_primitive
from gridfary.verifier import certify, certify_against_graph

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

kinds = st.sampled_from(["tree", "cactus", "star", "path", "balanced"])


@SETTINGS
@given(kinds, st.integers(1, 150), st.integers(0, 2**32), st.floats(0, 1))
def test_every_drawing_certifies(kind, n, seed, tri):
    g = generate_random(kind, n, seed, triangle_fraction=tri)
    res = draw_graph(g)
    assert res.report.passed, [v.to_dict() for v in res.report.violations[:3]]
    assert drawn_edges_match(g, res.drawing)


@SETTINGS
@given(st.integers(2, 120), st.integers(0, 2**32))
def test_json_round_trip_verifies(n, seed):
    g = generate_random("cactus", n, seed)
    d = draw_graph(g).drawing
    back = Drawing.from_json(d.to_json())
    assert back.same_geometry(d)
    assert certify_against_graph(back, g).passed


@SETTINGS
@given(st.integers(1, 150), st.integers(0, 2**32))
def test_cactus_algorithm_on_trees_is_tree_algorithm(n, seed):
    g = generate_random("tree", n, seed)
    t = build_rooted_tree(g)
    dec = build_cactus(g)
    a = draw_tree(t, assign_triples(t, first_k_primitive(t.budget)))
    b = draw_cactus(dec, assign_triples(dec, first_k_primitive(dec.budget)))
    assert a.positions == b.positions and a.edges == b.edges and a.triples_used == b.triples_used


@SETTINGS
@given(st.integers(3, 100), st.integers(0, 2**32), st.integers(0, 99))
def test_any_root_works(n, seed, pick):
    g = generate_random("cactus", n, seed)
    res = draw_graph(g, root=pick % n)
    assert res.drawing.positions[pick % n] == (0, 0)
    assert res.report.passed


@SETTINGS
@given(st.integers(2, 80), st.integers(0, 2**32))
def test_all_vertices_first_quadrant_and_distinct(n, seed):
    d = draw_graph(generate_random("cactus", n, seed)).drawing
    pts = list(d.positions.values())
    assert len(set(pts)) == len(pts)
    assert all(x >= 0 and y >= 0 for x, y in pts)


@SETTINGS
@given(st.integers(2, 60), st.integers(0, 2**32), st.integers(0, 10**6))
def test_perturbed_vertex_is_caught_or_harmless(n, seed, shift):
    # moving one vertex keeps the verifier consistent: it either still passes
    # all exact checks or it reports a violation
    g = generate_random("cactus", n, seed)
    d = draw_graph(g).drawing
    v = shift % n
    x, y = d.positions[v]
    d.positions[v] = (x + 1, y)
    d2 = Drawing.from_json(d.to_json())
    rep = certify(d2)
    lengths_ok = all(e.dx ** 2 + e.dy ** 2 == e.length ** 2 for e in d2.edges)
    if any(v in (e.u, e.v) for e in d2.edges):
        assert not lengths_ok and not rep.passed
