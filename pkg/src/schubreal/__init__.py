"""Exact and numerical tools for real Schubert calculus on Gr(d, m) and OG(n)."""
from .exact import (
    INFINITY,
    Mat,
    NotAPerfectSquare,
    Poly,
    RankAmbiguous,
    poly_derivative,
    poly_exact_sqrt,
    poly_root_multiplicity,
    poly_shift,
    rank,
)
from .geometry import (
    NotIsotropic,
    SubspacePoint,
    cell_identify,
    intersection_dims,
    isotropy_check,
    p_map,
    sample_isotropic,
    vanishing_order_matches_membership,
    wronskian,
    x_membership,
    y_membership,
)
from .osculating import (
    bilinear_form,
    check_orthogonal_flag,
    check_skew_derivative,
    check_translation_invariance,
    flag_basis,
)
from .partitions import (
    BarSequence,
    Partition,
    StrictPartition,
    bar_sequence,
    enumerate_strict,
    rect_syt_count,
    shifted_syt_count,
    tilde_partition,
    weight,
)
from .solver import (
    SchubertCondition,
    SchubertProblem,
    SolutionCertificate,
    SolverConfig,
    build_square_system,
    certify_real,
    certify_transverse,
    fiber_of_p,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITY", "Mat", "NotAPerfectSquare", "Poly", "RankAmbiguous", "poly_derivative",
    "poly_exact_sqrt", "poly_root_multiplicity", "poly_shift", "rank",
    "NotIsotropic", "SubspacePoint", "cell_identify", "intersection_dims", "isotropy_check",
    "p_map", "sample_isotropic", "vanishing_order_matches_membership", "wronskian",
    "x_membership", "y_membership",
    "bilinear_form", "check_orthogonal_flag", "check_skew_derivative",
    "check_translation_invariance", "flag_basis",
    "BarSequence", "Partition", "StrictPartition", "bar_sequence", "enumerate_strict",
    "rect_syt_count", "shifted_syt_count", "tilde_partition", "weight",
    "SchubertCondition", "SchubertProblem", "SolutionCertificate", "SolverConfig",
    "build_square_system", "certify_real", "certify_transverse", "fiber_of_p", "solve",
]
