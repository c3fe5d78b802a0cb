import math
from enum import Enum
from typing import Tuple

import numpy as np

from askey.arith import pochhammer, pochhammer_ratio
from askey.error_handler import DomainError, FitError
from askey.hypergeom import pfq_value

from ._families import cdh_raw, chahn_raw, mp_raw, scaled_sequence
from ._params import CdhParams, ChahnParams, Family, FamilyParams, MpParams, family_of

MIN_FIT_DEGREE = 8
MAX_K = 1e6
MAX_SIGMA = 50.0
ZERO_RATIO = 1e-14


class LimitKind(Enum):
    W_CDH = "w-cdh"
    W_CH = "w-ch"
    CDH_MP = "cdh-mp"


_TARGET = {
    LimitKind.W_CDH: CdhParams,
    LimitKind.W_CH: ChahnParams,
    LimitKind.CDH_MP: MpParams,
}


def _wilson_to_cdh(n, x, p: CdhParams, t) -> complex:
    # W_n(x^2; a, b, c, t) / (a + t)_n
    a, b, c = p.as_tuple()
    s = a + b + c + t
    source = (
        pochhammer(a + b, n)
        * pochhammer(a + c, n)
        * pfq_value([-n, n + s - 1, a + 1j * x, a - 1j * x], [a + b, a + c, a + t], 1)
    )
    return source - cdh_raw(n, x, a, b, c)


def _wilson_to_chahn(n, x, p: ChahnParams, t) -> complex:
    # W_n((x + t)^2; a - it, b - it, conj(a) + it, conj(b) + it) / ((-2t)^n n!)
    a, b = p.as_tuple()
    two_re_a, two_re_b = 2 * a.real, 2 * b.real
    a_bbar = a + b.conjugate()
    shifted = a + b - 2j * t
    source = (
        pochhammer_ratio([shifted], [], n, z=-0.5 / t)
        * pochhammer(two_re_a, n)
        * pochhammer_ratio([a_bbar], [1], n)
        * pfq_value(
            [-n, n + two_re_a + two_re_b - 1, a + 1j * x, a - 2j * t - 1j * x],
            [shifted, two_re_a, a_bbar],
            1,
        )
    )
    return source - chahn_raw(n, x, a, b)


def _cdh_to_mp(n, x, p: MpParams, t) -> complex:
    # S_n((x - t)^2; lam + it, lam - it, t cot(phi)) / ((t / sin(phi))_n n!)
    lam, phi = p.as_tuple()
    third = lam + 1j * t + t / math.tan(phi)
    source = (
        pochhammer_ratio([2 * lam, third], [1, t / math.sin(phi)], n)
        * pfq_value([-n, lam + 1j * x, lam + 2j * t - 1j * x], [2 * lam, third], 1)
    )
    return source - mp_raw(n, x, lam, phi)


_RESIDUAL = {
    LimitKind.W_CDH: _wilson_to_cdh,
    LimitKind.W_CH: _wilson_to_chahn,
    LimitKind.CDH_MP: _cdh_to_mp,
}


def limit_residual(kind: LimitKind, n: int, x: float, params: FamilyParams, t: float) -> float:
    """|scaled source polynomial at parameter t - target polynomial|

    The scaling of each limit relation is distributed over the
    Pochhammer factors of the source series, so nothing overflows as t
    grows and the residual decays like 1/t.

    Args:
        kind (LimitKind): which limit relation
        n (int): degree
        x (float): point
        params: parameters of the target family
        t (float): large parameter, t > 0

    Return:
        float: absolute residual, exactly 0 for n = 0
    """
    kind = LimitKind(kind)
    if not isinstance(params, _TARGET[kind]):
        raise DomainError(f"{kind.value} needs {_TARGET[kind].__name__}")
    if t <= 0:
        raise DomainError(f"limit parameter t={t} must be positive")

    return abs(_RESIDUAL[kind](n, x, params, t))


def growth_bound_check(
    family: Family, n_max: int, x: float, params: FamilyParams
) -> Tuple[float, float]:
    """Fit |P_n| <= K (n!)^g (1 + n)^sigma over n = 0..n_max

    sigma comes from a least-squares fit of log|P_n / (n!)^g| on
    log(1 + n), clipped at 0; K is then the smallest constant for which
    the envelope holds at every sampled degree. Degrees where P_n
    vanishes are left out of the fit.

    Return:
        (K, sigma)
    """
    family = Family(family)
    if family_of(params) is not family:
        raise DomainError(f"parameters {params!r} do not belong to {family.value}")
    if n_max < MIN_FIT_DEGREE:
        raise DomainError(f"n_max={n_max} is below {MIN_FIT_DEGREE}")

    magnitudes = np.abs(np.array(scaled_sequence(n_max, x, params)))
    keep = magnitudes > ZERO_RATIO * magnitudes.max()
    degrees = np.arange(n_max + 1)[keep]
    log_values = np.log(magnitudes[keep])
    log_degree = np.log1p(degrees)

    design = np.column_stack([np.ones_like(log_degree), log_degree])
    (_, slope), *_ = np.linalg.lstsq(design, log_values, rcond=None)
    sigma = max(float(slope), 0.0)
    log_k = float(np.max(log_values - sigma * log_degree))
    k = math.exp(log_k) if log_k < 700 else math.inf

    if not (math.isfinite(k) and math.isfinite(sigma)) or k > MAX_K or sigma > MAX_SIGMA:
        raise FitError(
            f"no envelope K={k:.3g} <= {MAX_K:g}, sigma={sigma:.3g} <= {MAX_SIGMA:g} "
            f"for {family.value} up to n={n_max}"
        )

    return k, sigma
