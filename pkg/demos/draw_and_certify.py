"""Draw a random tree and a random cactus, certify both and save SVGs."""
import sys
from pathlib import Path

from gridfary.generators import generate_random
from gridfary.pipeline import draw_graph
from gridfary.svg import to_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

for kind, n, seed in [("tree", 40, 1), ("cactus", 40, 2)]:
    g = generate_random(kind, n, seed)
    res = draw_graph(g)
    d = res.drawing
    print(f"{kind}: n={n} algorithm={d.algorithm} grid {d.width} x {d.height}, "
          f"{d.triples_used} triples")
    # the certificate re-checks integrality, planarity, cones and size bounds
    print(res.report.table())
    path = out / f"{kind}_{n}.svg"
    path.write_text(to_svg(d))
    print(f"wrote {path}\n")

# A triangle is the one cycle that cannot be a parallelogram; it gets the
# scaled (7, 15, 20) shape instead.
tri = draw_graph(generate_random("cactus", 3, 0, cycles=1)).drawing
print("triangle:", sorted(tri.positions.values()), sorted(e.length for e in tri.edges))
