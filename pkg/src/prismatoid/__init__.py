"""Exact tools for perfect prismatoids: two-level systems, 0/1 normalization
and lattice Delaunay certificates."""

from .delaunay import (
    DelaunayCertificate,
    EllipsoidForm,
    FacetQuadric,
    PolytopeLattice,
    box_scan,
    build_ellipsoid,
    build_facet_quadrics,
    classify_level_combination,
    delaunay_certificate,
    delaunay_embedding,
    enumerate_lattice_in_ellipsoid,
    lattice_of_polytope,
    verify_certificate,
)
from .exact_linalg import AffineMap, hermite_normal_form, isqrt_bounds, ldlt, rank, solve
from .generators import (
    check_hanner_3d,
    hanner_expressions,
    hanner_polytope,
    kalai_check,
    make_crosspolytope,
    make_cube,
    make_simplex,
    parse_hanner,
    total_face_count,
)
from .normalize import normalizing_map, select_independent_normals, to_01_polytope
from .polytope import (
    FaceLattice,
    FVector,
    HPolytope,
    VPolytope,
    affine_dimension,
    central_symmetry_center,
    f_vector,
    face_lattice,
    h_to_v,
    v_to_h,
    vertex_facet_incidence,
)
from .two_level import (
    TwoLevelSystem,
    extract_two_level_system,
    facet_value_sets,
    is_perfect_prismatoid,
    is_prismatoid,
    prismatoid_over_facet,
)

__version__ = "0.1.0"

__all__ = [
    "DelaunayCertificate",
    "EllipsoidForm",
    "FacetQuadric",
    "PolytopeLattice",
    "box_scan",
    "build_ellipsoid",
    "build_facet_quadrics",
    "classify_level_combination",
    "delaunay_certificate",
    "delaunay_embedding",
    "enumerate_lattice_in_ellipsoid",
    "lattice_of_polytope",
    "verify_certificate",
    "AffineMap",
    "hermite_normal_form",
    "isqrt_bounds",
    "ldlt",
    "rank",
    "solve",
    "check_hanner_3d",
    "hanner_expressions",
    "hanner_polytope",
    "kalai_check",
    "make_crosspolytope",
    "make_cube",
    "make_simplex",
    "parse_hanner",
    "total_face_count",
    "normalizing_map",
    "select_independent_normals",
    "to_01_polytope",
    "FaceLattice",
    "FVector",
    "HPolytope",
    "VPolytope",
    "affine_dimension",
    "central_symmetry_center",
    "f_vector",
    "face_lattice",
    "h_to_v",
    "v_to_h",
    "vertex_facet_incidence",
    "TwoLevelSystem",
    "extract_two_level_system",
    "facet_value_sets",
    "is_perfect_prismatoid",
    "is_prismatoid",
    "prismatoid_over_facet",
]
