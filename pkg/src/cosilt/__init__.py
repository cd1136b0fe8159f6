"""Exact computations with cosilting complexes over path algebras of acyclic quivers."""

__version__ = "0.1.0"

from .linalg import QQ, Field, Matrix
from .quiver import Path, Quiver
from .rep import Representation, RepMorphism, dual_regular, injective, projective, regular, simple
from .derived import Complex, ChainMap, derived_hom, derived_iso, prod_equivalent, shift, stalk, summand_names
from .recollement import LadderContext, apply_functor, build_ladder, canonical_triangles
from .cosilting import cointermediacy_window, glued_window_bounds, is_cosilting, measure_ladder_bounds
from .gluing import glue, verify_gluing
from .mutation import compat_left, compat_right, right_mutate

__all__ = [
    "QQ", "Field", "Matrix", "Path", "Quiver", "Representation", "RepMorphism", "dual_regular", "injective",
    "projective", "regular", "simple", "Complex", "ChainMap", "derived_hom", "derived_iso", "prod_equivalent",
    "shift", "stalk", "summand_names", "LadderContext", "apply_functor", "build_ladder", "canonical_triangles",
    "cointermediacy_window", "glued_window_bounds", "is_cosilting", "measure_ladder_bounds", "glue",
    "verify_gluing", "compat_left", "compat_right", "right_mutate",
]
