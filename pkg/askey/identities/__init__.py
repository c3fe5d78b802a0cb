from ._identities import (
    CATALOG,
    K_CAP,
    K_START,
    TOL,
    IdentityDescriptor,
    IdentityId,
    IdentityInput,
    RhoDomain,
    adaptive_rhs,
    base_terms,
    check_hypotheses,
    degenerate,
    in_domain,
    input_echo,
    lhs,
    lhs_derivative_at_zero,
    rho_bound,
    rho_tilde,
    rhs_coefficient,
    rhs_prefactor,
    rhs_terms,
    rhs_truncated,
    sample_input,
    series_coefficient,
    skip_reason,
    target_params,
    verify,
)

__all__ = [
    "CATALOG",
    "K_CAP",
    "K_START",
    "TOL",
    "IdentityDescriptor",
    "IdentityId",
    "IdentityInput",
    "RhoDomain",
    "adaptive_rhs",
    "base_terms",
    "check_hypotheses",
    "degenerate",
    "in_domain",
    "input_echo",
    "lhs",
    "lhs_derivative_at_zero",
    "rho_bound",
    "rho_tilde",
    "rhs_coefficient",
    "rhs_prefactor",
    "rhs_terms",
    "rhs_truncated",
    "sample_input",
    "series_coefficient",
    "skip_reason",
    "target_params",
    "verify",
]
