"""Clamped cubic splines and their sensitivity to endpoint derivatives."""

from .spline_core import (
    CubicSpline,
    DomainError,
    HermitePiece,
    Partition,
    Slopes,
    SplineInput,
    TridiagonalSystem,
    assemble_system,
    build_spline,
    compute_slopes,
    evaluate,
    evaluate_derivative,
    evaluate_second_derivative,
    midpoint_value,
    solve_tridiagonal,
)
from .bounds import (
    BoundNotClaimedError,
    InverseColumns,
    OmegaSet,
    PairDifferenceBound,
    certify_kershaw,
    certify_pair_bound,
    convergence_study,
    derivative_perturbation,
    inverse_columns,
    omega_set,
    pair_difference_bound,
)
from .monotonicity import (
    Prop42Constants,
    Prop42HypothesisError,
    Prop42Report,
    fritsch_carlson_necessary,
    piece_is_monotone,
    prop42_check_hypotheses,
    prop42_constants,
    prop42_search,
    prop42_verify,
    spline_is_monotone,
)

__version__ = "0.1.0"

__all__ = [
    "CubicSpline",
    "DomainError",
    "HermitePiece",
    "Partition",
    "Slopes",
    "SplineInput",
    "TridiagonalSystem",
    "assemble_system",
    "build_spline",
    "compute_slopes",
    "evaluate",
    "evaluate_derivative",
    "evaluate_second_derivative",
    "midpoint_value",
    "solve_tridiagonal",
    "BoundNotClaimedError",
    "InverseColumns",
    "OmegaSet",
    "PairDifferenceBound",
    "certify_kershaw",
    "certify_pair_bound",
    "convergence_study",
    "derivative_perturbation",
    "inverse_columns",
    "omega_set",
    "pair_difference_bound",
    "Prop42Constants",
    "Prop42HypothesisError",
    "Prop42Report",
    "fritsch_carlson_necessary",
    "piece_is_monotone",
    "prop42_check_hypotheses",
    "prop42_constants",
    "prop42_search",
    "prop42_verify",
    "spline_is_monotone",
]
