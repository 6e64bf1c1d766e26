"""Exact polytopes of pointed pseudo-triangulations.

Everything is computed over the rationals: orientation predicates, rigidity
matrices, the polyhedron of constrained expansions, its extreme rays and the
one-dimensional associahedron of non-crossing alternating trees.
"""

from .errors import (
    GeneralPositionError,
    InvalidPerturbationError,
    InvariantViolation,
    NotInImageError,
    PreconditionError,
)
from .exact import Matrix, Q, nullspace, rank, rref, solve_linear
from .geometry import EmbeddedGraph, Point, PointSet, convex_hull, hull_edges, is_pointed_pseudo_triangulation
from .rigidity import Normalization, all_strains, flex_space, four_point_stress, is_laman, strain
from .pptenum import PPT, FlipGraph, collapse, enumerate_ppts, flip, pte_mechanism, rigid_components
from .expansion import (
    DetProduct,
    Explicit,
    NormHeuristic,
    brute_force_rays,
    check_validity,
    cone_extreme_rays,
    expansive_flex,
    make_f,
    realize_polytope,
    reconstruct_motion,
)
from .assoc1d import GTable, Tree1D, check_g_validity, enumerate_trees, vertex_for_tree
from .secondary import affine_map_check, gkz_vector

__all__ = [
    "GeneralPositionError",
    "InvalidPerturbationError",
    "InvariantViolation",
    "NotInImageError",
    "PreconditionError",
    "Matrix",
    "Q",
    "nullspace",
    "rank",
    "rref",
    "solve_linear",
    "EmbeddedGraph",
    "Point",
    "PointSet",
    "convex_hull",
    "hull_edges",
    "is_pointed_pseudo_triangulation",
    "Normalization",
    "all_strains",
    "flex_space",
    "four_point_stress",
    "is_laman",
    "strain",
    "PPT",
    "FlipGraph",
    "collapse",
    "enumerate_ppts",
    "flip",
    "pte_mechanism",
    "rigid_components",
    "DetProduct",
    "Explicit",
    "NormHeuristic",
    "brute_force_rays",
    "check_validity",
    "cone_extreme_rays",
    "expansive_flex",
    "make_f",
    "realize_polytope",
    "reconstruct_motion",
    "GTable",
    "Tree1D",
    "check_g_validity",
    "enumerate_trees",
    "vertex_for_tree",
    "affine_map_check",
    "gkz_vector",
]

__version__ = "0.1.0"
