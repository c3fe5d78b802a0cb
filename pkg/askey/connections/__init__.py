from ._connections import (
    ConnectionCoeff,
    cdh_connect_1p,
    cdh_connect_2p,
    cdh_limit_residual,
    chahn_connect,
    chahn_whipple_factor,
    connection_coefficient,
    connection_matrix,
    expand,
    mp_connect,
    wilson_connect_1p,
    wilson_connect_3p,
    wilson_intermediate,
)

__all__ = [
    "ConnectionCoeff",
    "cdh_connect_1p",
    "cdh_connect_2p",
    "cdh_limit_residual",
    "chahn_connect",
    "chahn_whipple_factor",
    "connection_coefficient",
    "connection_matrix",
    "expand",
    "mp_connect",
    "wilson_connect_1p",
    "wilson_connect_3p",
    "wilson_intermediate",
]
