"""Exact polyhedral combinatorics for toric hypersurfaces and their
Landau-Ginzburg mirrors: lattice polytopes, star-like triangulations,
Danilov-Khovanskii Hodge numbers, and the mirror Hodge table of the
vanishing-cycle sheaf, all over exact integer arithmetic.
"""

from .lattice import (
    Cone,
    Fan,
    GeometryError,
    HalfSpace,
    LatticePolytope,
    cone_over,
    convex_hull_and_faces,
    dual_cone,
    is_standard_cone,
    lattice_points,
    minkowski_sum,
)
from .toric import (
    NonSmoothError,
    PLFunction,
    PolytopeAnalysis,
    delta_prime_and_kodaira,
    newton_polytope_of_pl,
    normal_fan,
    reflexivity_and_minkowski_check,
    support_function,
)
from .subdivide import (
    DeltaPrimeEmpty,
    PolyhedralComplex,
    Triangulation,
    TriangulationError,
    fans_from_data,
    is_star_like,
    pstar,
    standard_triangulation,
    triangulation_from_cells,
)
from .mirror import (
    MirrorData,
    build_mirror_data,
    dual_intersection_complex,
    p_maps,
    stratum_profiles,
)
from .hodge_s import (
    HodgeFormulaError,
    HodgeTable,
    binom,
    ell_star_phi,
    ep_S,
    hodge_diamond_S,
    hpq_upper_S,
)
from .hodge_mirror import (
    curve_hh_check,
    ep_handlebody_torus,
    ep_mirror,
    hpp_mirror_upper,
    mirror_context,
    mirror_hodge_table,
    stratum_depth_check,
    verify_main_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "Cone", "Fan", "GeometryError", "HalfSpace", "LatticePolytope",
    "cone_over", "convex_hull_and_faces", "dual_cone", "is_standard_cone",
    "lattice_points", "minkowski_sum",
    "NonSmoothError", "PLFunction", "PolytopeAnalysis",
    "delta_prime_and_kodaira", "newton_polytope_of_pl", "normal_fan",
    "reflexivity_and_minkowski_check", "support_function",
    "DeltaPrimeEmpty", "PolyhedralComplex", "Triangulation",
    "TriangulationError", "fans_from_data", "is_star_like", "pstar",
    "standard_triangulation", "triangulation_from_cells",
    "MirrorData", "build_mirror_data", "dual_intersection_complex",
    "p_maps", "stratum_profiles",
    "HodgeFormulaError", "HodgeTable", "binom", "ell_star_phi", "ep_S",
    "hodge_diamond_S", "hpq_upper_S",
    "curve_hh_check", "ep_handlebody_torus", "ep_mirror",
    "hpp_mirror_upper", "mirror_context", "mirror_hodge_table",
    "stratum_depth_check", "verify_main_theorem",
]
