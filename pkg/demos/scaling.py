"""How the grid side grows with n, and how it compares to the proven bound."""
from gridfary.bench import bench_bounds, fit_exponent

sizes = [100, 200, 400, 800]
runs = {
    "trees": bench_bounds("tree", sizes, 3, seed=0),
    "cacti, no triangles": bench_bounds("cactus", sizes, 3, seed=1, cycle_density=0.1, triangle_fraction=0.0),
    "cacti, n/4 triangles": bench_bounds("cactus", sizes, 3, seed=2, cycle_density=0.25, triangle_fraction=1.0),
}
for name, rows in runs.items():
    worst = max(r["slack_float"] for r in rows)
    print(f"{name:22s} side ~ n^{fit_exponent(rows):.2f}   worst side/bound {worst:.3f}")

# The per-instance rows carry the raw numbers.
for r in runs["trees"][:3]:
    print({k: r[k] for k in ("n", "trial", "t", "d", "side", "slack_float")})
