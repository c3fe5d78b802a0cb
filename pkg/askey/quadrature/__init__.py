from ._quadrature import (
    BUDGET,
    COROLLARIES,
    CUTOFF_RATIO,
    QUAD_TOL,
    TOL,
    CorollaryChecker,
    CorollaryDescriptor,
    CorollaryId,
    Domain,
    QuadResult,
    corollary_check,
    corollary_draw,
    corollary_sides,
    gram,
    integrate,
    log_weight,
    orthogonality_offdiag,
    parseval_check,
    polynomial,
    printed_rhs,
    projected_rhs,
    projection_coherence,
    scaled_norm,
    weight,
)

__all__ = [
    "BUDGET",
    "COROLLARIES",
    "CUTOFF_RATIO",
    "QUAD_TOL",
    "TOL",
    "CorollaryChecker",
    "CorollaryDescriptor",
    "CorollaryId",
    "Domain",
    "QuadResult",
    "corollary_check",
    "corollary_draw",
    "corollary_sides",
    "gram",
    "integrate",
    "log_weight",
    "orthogonality_offdiag",
    "parseval_check",
    "polynomial",
    "printed_rhs",
    "projected_rhs",
    "projection_coherence",
    "scaled_norm",
    "weight",
]
