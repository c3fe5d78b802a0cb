from ._hypergeom import (
    DEFAULT_TOL,
    PfqSpec,
    SeriesValue,
    chu_vandermonde,
    pfq,
    pfq_terms,
    pfq_value,
    saalschutz_sum,
    whipple_sum,
)

__all__ = [
    "DEFAULT_TOL",
    "PfqSpec",
    "SeriesValue",
    "chu_vandermonde",
    "pfq",
    "pfq_terms",
    "pfq_value",
    "saalschutz_sum",
    "whipple_sum",
]
