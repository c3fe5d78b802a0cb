from ._params import (
    CdhParams,
    ChahnParams,
    Family,
    FamilyParams,
    MpParams,
    PARAMS_OF,
    WilsonParams,
    check_conjugate_pairs,
    family_of,
    params_to_dict,
)
from ._families import (
    N_MAX,
    cdh,
    cdh_raw,
    cdh_sumrep,
    condition_scale,
    chahn,
    chahn_sumrep,
    evaluate,
    mp,
    mp_raw,
    mp_sumrep,
    scaled_sequence,
    scaled_value,
    wilson,
    wilson_raw,
    wilson_sumrep,
)
from ._limits import LimitKind, growth_bound_check, limit_residual

__all__ = [
    "CdhParams",
    "ChahnParams",
    "Family",
    "FamilyParams",
    "LimitKind",
    "MpParams",
    "N_MAX",
    "PARAMS_OF",
    "WilsonParams",
    "cdh",
    "cdh_raw",
    "cdh_sumrep",
    "condition_scale",
    "chahn",
    "chahn_sumrep",
    "check_conjugate_pairs",
    "evaluate",
    "family_of",
    "growth_bound_check",
    "limit_residual",
    "mp",
    "mp_raw",
    "mp_sumrep",
    "params_to_dict",
    "scaled_sequence",
    "scaled_value",
    "wilson",
    "wilson_raw",
    "wilson_sumrep",
]
