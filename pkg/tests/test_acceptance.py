"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line (bypassing pytest's
capture) before asserting. Run alone with::

    pytest tests/test_acceptance.py -v
    python3 tests/test_acceptance.py
"""
from __future__ import annotations

import math
import sys
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from gridfary.bench import bench_bounds, fit_exponent
from gridfary.embedder import Drawing, cycle_offsets, draw_cactus, draw_cycle_canonical, draw_star, draw_tree
from gridfary.generators import generate_random
from gridfary.graph_model import InputGraph, assign_triples, build_cactus, build_rooted_tree
from gridfary.pipeline import draw_graph
from gridfary.pythagorean import (
    PI_SQ_UPPER,
    PythTriple,
    first_k_primitive,
    size_bound_audit,
    slope_compare,
)
from gridfary.verifier import Profile, certify, grid_bound

N, D = PI_SQ_UPPER.numerator, PI_SQ_UPPER.denominator
_capsys = None


@pytest.fixture(autouse=True)
def _grab_capsys(capsys):
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def report(num: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}"
    if _capsys is not None:
        with _capsys.disabled():
            print("\n" + line, flush=True)
    else:
        print(line, flush=True)
    assert ok, line


def instance_n(seed: int, lo: int, hi: int) -> int:
    return int(np.random.default_rng([seed, 7]).integers(lo, hi + 1))


# ---------------------------------------------------------------------------


def test_c1_triple_completeness():
    L = 1000
    t0 = time.perf_counter()
    # oracle: scan every leg pair below L, keep exact squares with coprime legs
    x = np.arange(1, L, dtype=np.int64)
    X, Y = np.meshgrid(x, x, indexing="ij")
    S = X * X + Y * Y
    R = np.rint(np.sqrt(S.astype(np.float64))).astype(np.int64)
    hit = (R * R == S) & (R <= L) & (np.gcd(X, Y) == 1)
    brute = {(int(a), int(b), int(c)) for a, b, c in zip(X[hit], Y[hit], R[hit])}
    # any triple with ell <= L has m^2 < L; generate until m passes sqrt(L)
    k = 256
    while True:
        seq = first_k_primitive(k)
        if seq.params[-1].m * seq.params[-1].m > L:
            break
        k *= 2
    got = {tuple(t) for t in seq.triples if t.ell <= L}
    both = all((b, a, c) in got for a, b, c in got)
    dt = time.perf_counter() - t0
    report(1, got == brute and both and dt < 5,
           f"{len(got)} triples with ell <= {L} equal the brute-force set ({len(brute)}), both orientations, {dt:.2f}s")


def test_c2_size_bounds():
    t0 = time.perf_counter()
    audit = size_bound_audit(first_k_primitive(10**5))
    dt = time.perf_counter() - t0
    report(2, audit.passed and dt < 10,
           f"k <= 1e5: first violation {audit.first_violation}, max component/k {float(audit.max_component_ratio):.3f}, "
           f"max m^2/k {float(audit.max_param_sq_ratio):.3f}, {dt:.2f}s")


def test_c3_parity():
    bad = [t for t in first_k_primitive(10**5).triples if (t.x % 2) + (t.y % 2) != 1]
    report(3, not bad, f"exactly one odd leg in all 1e5 triples ({len(bad)} violations)")


def test_c4_angle_order():
    K = 10**4
    seq = first_k_primitive(K)
    full = seq.angle_sorted_triples()
    inversions = sum(slope_compare(a, b) != -1 for a, b in zip(full, full[1:]))
    mpmath.mp.dps = 50
    by_mp = sorted(seq.triples, key=lambda t: mpmath.atan2(t.y, t.x))
    float_agrees = by_mp == full
    # every prefix sorts to the restriction of the full order
    rank = {t: i for i, t in enumerate(seq.triples)}
    ks = list(range(1, 200)) + [int(k) for k in np.random.default_rng(4).integers(200, K + 1, 40)]
    prefixes_ok = all(
        seq.prefix(k).angle_sorted_triples() == [t for t in full if rank[t] < k] for k in ks
    )
    report(4, inversions == 0 and float_agrees and prefixes_ok,
           f"k <= 1e4: {inversions} inversions, 50-digit float sort agrees={float_agrees}, "
           f"{len(ks)} prefixes consistent={prefixes_ok}")


def test_c5_stars():
    t0 = time.perf_counter()
    failures = []
    worst = Fraction(0)
    for n in range(2, 2001):
        g = InputGraph(n, [(0, v) for v in range(1, n)])
        d = draw_star(g)
        rep = certify(d, g, Profile.STAR)
        # side <= (pi^2 (n+2) + 3) / 3, exactly, with pi^2 rounded up
        side = max(d.width, d.height)
        bound = (PI_SQ_UPPER * (n + 2) + 3) / 3
        worst = max(worst, side / bound)
        if not rep.passed or side > bound:
            failures.append(n)
    dt = time.perf_counter() - t0
    report(5, not failures and dt < 60,
           f"stars n=2..2000: {len(failures)} failures, max side/bound {float(worst):.4f}, {dt:.1f}s")


def test_c6_trees():
    t0 = time.perf_counter()
    failures = []
    worst = 0.0
    for seed in range(1000):
        n = instance_n(seed, 2, 2000)
        g = generate_random("tree", n, seed)
        tree = build_rooted_tree(g)
        a = assign_triples(tree, first_k_primitive(tree.budget))
        d = draw_tree(tree, a)
        rep = certify(d, tree, Profile.TREE, a)
        t, dep = tree.t, tree.d
        # root distance^2 <= (d * 2 pi^2 t / 3)^2  <=>  9 D^2 dist^2 <= (2 N t d)^2
        far = max(x * x + y * y for x, y in d.positions.values())
        dist_ok = 9 * D * D * far <= (2 * N * t * dep) ** 2
        side = max(d.width, d.height)
        bound = Fraction(2 * N * t * dep, 3 * D)
        worst = max(worst, float(side / bound))
        checks = rep.checks
        if not (rep.passed and checks["integrality"] and checks["planarity"] and checks["cones"]
                and dist_ok and side <= math.ceil(bound)):
            failures.append(seed)
    dt = time.perf_counter() - t0
    report(6, not failures and dt < 300,
           f"1000 random trees (n <= 2000): {len(failures)} failures, max side/bound {worst:.4f}, {dt:.1f}s")


def test_c7_cacti():
    t0 = time.perf_counter()
    failures = []
    tri_total = 0
    lengths = set()
    worst = 0.0
    for seed in range(1000):
        n = instance_n(seed, 3, 1000)
        g = generate_random("cactus", n, seed)
        dec = build_cactus(g)
        a = assign_triples(dec, first_k_primitive(dec.budget))
        d = draw_cactus(dec, a)
        rep = certify(d, dec, Profile.CACTUS, a)
        tri_total += dec.delta
        lengths.update(c.length for c in dec.cycles)
        side = max(d.width, d.height)
        bound = grid_bound(Profile.CACTUS, t=dec.t, d=dec.d, o=dec.o, delta=dec.delta)
        worst = max(worst, float(side / bound))
        if not rep.passed or not rep.checks["distance"] or side > math.ceil(bound):
            failures.append(seed)
    dt = time.perf_counter() - t0
    mixed = 3 in lengths and len(lengths) > 3
    report(7, not failures and mixed and dt < 600,
           f"1000 random cacti (n <= 1000, {tri_total} triangles, cycle lengths {min(lengths)}..{max(lengths)}): "
           f"{len(failures)} failures, max side/bound {worst:.4f}, {dt:.1f}s")


def test_c8_canonical_cycles():
    flat, steep = PythTriple(4, 3, 5), PythTriple(3, 4, 5)

    def ring(L):
        return build_cactus(InputGraph(L, [(k, (k + 1) % L) for k in range(L)], root=0)).cycles[0]

    four = draw_cycle_canonical(ring(4), flat, steep).positions
    five = draw_cycle_canonical(ring(5), flat, steep).positions
    tri = draw_cycle_canonical(ring(3), flat, steep)
    ok = (
        four == {0: (0, 0), 1: (4, 3), 3: (3, 4), 2: (7, 7)}
        and five == {0: (0, 0), 1: (4, 3), 4: (3, 4), 3: (6, 8), 2: (10, 11)}
        and tri.positions == {0: (0, 0), 2: (9, 12), 1: (16, 12)}
        and sorted(e.length for e in tri.edges) == [7, 15, 20]
        and cycle_offsets(2, 1, flat, steep) == ([(0, 0), (16, 12)], [(0, 0), (9, 12), (16, 12)])
    )
    report(8, ok, f"4-cycle {sorted(four.values())}, 5-cycle {sorted(five.values())}, triangle {sorted(tri.positions.values())}")


def test_c9_degeneration():
    mismatches = []
    for seed in range(100):
        g = generate_random("tree", instance_n(seed, 1, 500), seed)
        t = build_rooted_tree(g)
        dec = build_cactus(g)
        a = draw_tree(t, assign_triples(t, first_k_primitive(t.budget))).to_json()
        b = draw_cactus(dec, assign_triples(dec, first_k_primitive(dec.budget))).to_json()
        a.pop("algorithm")
        b.pop("algorithm")
        if a != b:
            mismatches.append(seed)
    report(9, not mismatches, f"100 random trees: cactus and tree drawings identical apart from the algorithm tag "
                              f"({len(mismatches)} mismatches)")


def test_c10_scaling():
    sizes = [250, 500, 1000, 2000]
    trials = 5
    trees = bench_bounds("tree", sizes, trials, seed=10)
    flat = bench_bounds("cactus", sizes, trials, seed=11, cycle_density=0.1, triangle_fraction=0.0)
    tri = bench_bounds("cactus", sizes, trials, seed=12, cycle_density=0.25, triangle_fraction=1.0)
    e_tree, e_flat, e_tri = fit_exponent(trees), fit_exponent(flat), fit_exponent(tri)
    no_tri = all(r["delta"] == 0 for r in flat)
    linear_tri = min(r["delta"] / r["n"] for r in tri) >= 0.2
    slack_ok = all(r["slack_float"] <= 1 for r in trees + flat + tri)
    report(10, e_tree <= 2.3 and e_flat <= 2.3 and e_tri <= 3.3 and no_tri and linear_tri and slack_ok,
           f"fitted side exponents over n={sizes} x {trials} trials: trees {e_tree:.3f} (<= 2.3), "
           f"triangle-free cacti {e_flat:.3f} (<= 2.3), cacti with n/4 triangles {e_tri:.3f} (<= 3.3)")


def test_c11_figure_instances():
    def full_binary(depth):
        n = 2 ** (depth + 1) - 1
        return InputGraph(n, [((v - 1) // 2, v) for v in range(1, n)])

    cases = {
        "path-12": InputGraph(12, [(v, v + 1) for v in range(11)]),
        "cycle-12": InputGraph(12, [(v, (v + 1) % 12) for v in range(12)]),
        "cycle-3": InputGraph(3, [(0, 1), (1, 2), (2, 0)]),
        "star-13": InputGraph(13, [(0, v) for v in range(1, 13)]),
        "binary-depth-3": full_binary(3),
    }
    parts = []
    ok = True
    for name, g in cases.items():
        res = draw_graph(g)
        rt = Drawing.from_json(res.drawing.to_json())
        passed = res.report.passed and certify(rt, res.decomp, res.profile, res.assignment).passed
        ok &= passed
        parts.append(f"{name} {res.drawing.width}x{res.drawing.height} {'ok' if passed else 'FAIL'}")
    report(11, ok, "verifier and bound pass on " + ", ".join(parts))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
