"""A short tour of the primitive Pythagorean triples used as edge directions."""
from gridfary.pythagorean import first_k_primitive, size_bound_audit

# The generator walks Euclid parameters (m, s) in order and emits each
# primitive triple in both orientations, so (3, 4, 5) comes with (4, 3, 5).
seq = first_k_primitive(12)
for p, t in zip(seq.params, seq.triples):
    print(f"m={p.m:2d} n={p.n:2d}  ->  ({t.x:3d}, {t.y:3d}, {t.ell:3d})")

# Sorting by angle is done with exact cross products, no floats involved.
print("\nshallowest to steepest:")
print(" ".join(f"({t.x},{t.y})" for t in seq.angle_sorted_triples()))

# Every component of the first k triples stays below a small multiple of k.
audit = size_bound_audit(first_k_primitive(20000))
print(f"\nsize audit on 20000 triples passed: {audit.passed}")
print(f"largest component / k = {float(audit.max_component_ratio):.3f}")
