"""Spin numbers of products of Picard-Lefschetz reflections, computed exactly."""

from .dynkin_catalog import (
    CatalogEntry,
    Frame,
    GabrielovDiagram,
    build_gabrielov,
    catalog,
    frame_vectors,
)
from .exact_lattice import Lattice, Rational, Signature, inner_product, signature
from .io_format import ProblemFile, emit_svg, parse_problem, serialize_problem
from .mutation import BraidWord, apply_braid_word, mutate_alpha, mutate_beta, parse_braid_word
from .obstruction import (
    CharNumbers4,
    CharNumbers6,
    Verdict,
    check_theorem_1_4,
    check_theorem_1_6,
    d_invariant,
    dirac_index6,
)
from .picard_lefschetz import (
    LatticeMap,
    SphereClass,
    SphereSeq,
    compose,
    is_homologically_trivial,
    monodromy_order,
    reflect,
    reflection_matrix,
)
from .spin_number import (
    LoopPolyline,
    PlanePoint,
    SpinResult,
    loop_vertices,
    orthogonalize_frame,
    project,
    spin_number,
    winding_number,
)

__all__ = [
    "BraidWord",
    "CatalogEntry",
    "CharNumbers4",
    "CharNumbers6",
    "Frame",
    "GabrielovDiagram",
    "Lattice",
    "LatticeMap",
    "LoopPolyline",
    "PlanePoint",
    "ProblemFile",
    "Rational",
    "Signature",
    "SphereClass",
    "SphereSeq",
    "SpinResult",
    "Verdict",
    "apply_braid_word",
    "build_gabrielov",
    "catalog",
    "check_theorem_1_4",
    "check_theorem_1_6",
    "compose",
    "d_invariant",
    "dirac_index6",
    "emit_svg",
    "frame_vectors",
    "inner_product",
    "is_homologically_trivial",
    "loop_vertices",
    "monodromy_order",
    "mutate_alpha",
    "mutate_beta",
    "orthogonalize_frame",
    "parse_braid_word",
    "parse_problem",
    "project",
    "reflect",
    "reflection_matrix",
    "serialize_problem",
    "signature",
    "spin_number",
    "winding_number",
]

__version__ = "0.1.0"
