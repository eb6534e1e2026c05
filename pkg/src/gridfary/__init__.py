"""Planar straight-line drawings on the integer grid whose edge lengths are
all integers, for stars, trees and cacti."""
from .errors import GraphInputError, InvariantViolation, UnsupportedGraphError
from .pythagorean import (
    PythTriple,
    TripleSequence,
    angle_sorted_prefix,
    first_k_primitive,
    size_bound_audit,
    slope_compare,
)
from .graph_model import (
    GraphClass,
    InputGraph,
    assign_triples,
    build_cactus,
    build_rooted_tree,
    classify,
)
from .embedder import Drawing, draw_cactus, draw_cycle_canonical, draw_star, draw_tree
from .verifier import CertReport, Profile, ViolationKind, certify, check_bounds, check_integrality, check_planarity
from .pipeline import DrawResult, draw_graph
from .generators import generate_random

__version__ = "0.1.0"
