"""Desk-scale numerics for matrix norms over numerical ranges.

Separation constants and interpolation bounds on the disk, compressed
shifts with closed-form eigenstructure, numerical range geometry,
conformal maps to the disk, extremal Blaschke search, and the boundary
representation measures of extremal vectors.
"""

from .boundary_measures import rho_density, w_measure_check
from .conformal_map import ConformalMap, build_map, map_interior, range_map
from .extremal_search import (
    ExtremalResult,
    SearchConfig,
    degree_census,
    detect_degree,
    optimize_norm,
    optimize_radius,
)
from .hyp_geometry import (
    BlaschkeProduct,
    blaschke_factorizations,
    earl_bound,
    pseudo_distance,
    separation_constant,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .matrix_functions import crabb_matrix, crouzeix_ratio, li_matrix, tilde_constant
from .model_space import ModelSpaceSystem, build_m_theta, condition_report, eigvec_matrices
from .numerical_range import DomainBoundary, numerical_radius, range_boundary
from .pick_oracle import InterpolationProblem, check_earl_inequality, minimal_interpolation_norm

__version__ = "0.1.0"

__all__ = [
    "BlaschkeProduct",
    "ConformalMap",
    "DomainBoundary",
    "ExtremalResult",
    "InterpolationProblem",
    "KERNEL_BACKEND",
    "ModelSpaceSystem",
    "SearchConfig",
    "__version__",
    "blaschke_factorizations",
    "build_m_theta",
    "build_map",
    "check_earl_inequality",
    "condition_report",
    "crabb_matrix",
    "crouzeix_ratio",
    "degree_census",
    "detect_degree",
    "earl_bound",
    "eigvec_matrices",
    "li_matrix",
    "map_interior",
    "minimal_interpolation_norm",
    "numerical_radius",
    "optimize_norm",
    "optimize_radius",
    "pseudo_distance",
    "range_boundary",
    "range_map",
    "rho_density",
    "separation_constant",
    "tilde_constant",
    "w_measure_check",
]
