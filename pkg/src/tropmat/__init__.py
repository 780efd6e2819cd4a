"""Tropical oriented matroids, mixed subdivisions of dilated simplices and
their constructions, with exact arithmetic throughout."""

from .axioms import AxiomReport, Tom, check_all, is_general_position, is_tom, topes, vertices
from .convexity import (
    approximated_types,
    constructibility_witness,
    convex_hull,
    dist,
    eliminate_via_connectivity,
    halfspace_covectors,
    is_connected_subcomplex,
    m_of,
    separating_halfspace,
    star,
)
from .core import NdType, comparability_graph, comparable, dimension, faces, is_acyclic, is_face, refine, type_graph
from .ops import contraction, deletion, dual_tom, transpose
from .realize import WeightMatrix, is_generic, lattice_tope, point_type, realize_tom
from .subdivision import (
    MixedSubdivision,
    blow_up,
    blow_up_nonfine,
    cell_volume,
    census,
    d_placing,
    dual_subdivision,
    from_tom,
    is_fine,
    n_placing,
    regular_mixed_subdivision,
    to_tom,
    topes_of,
    verify_subdivision,
)

__all__ = [name for name in dir() if not name.startswith("_")]
