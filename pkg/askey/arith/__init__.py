from ._arith import (
    BoundId,
    binomial,
    bound_margin,
    gamma,
    gamma_imag_sq,
    is_pole,
    log_gamma,
    log_gamma_imag_sq,
    pochhammer,
    pochhammer_ratio,
    rgamma,
)

__all__ = [
    "BoundId",
    "binomial",
    "bound_margin",
    "gamma",
    "gamma_imag_sq",
    "is_pole",
    "log_gamma",
    "log_gamma_imag_sq",
    "pochhammer",
    "pochhammer_ratio",
    "rgamma",
]
