import itertools
import math
import os
import time
import zlib
from dataclasses import dataclass, field, replace
from logging import Logger
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np
import yaml

from askey.arith import (
    BoundId,
    binomial,
    bound_margin,
    gamma,
    pochhammer,
    pochhammer_ratio,
)
from askey.connections import (
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
)
from askey.error_handler import (
    BudgetExceeded,
    DomainError,
    FitError,
    NonConvergence,
    UnknownProperty,
)
from askey.families import (
    CdhParams,
    ChahnParams,
    Family,
    LimitKind,
    MpParams,
    WilsonParams,
    cdh,
    cdh_raw,
    cdh_sumrep,
    chahn,
    chahn_sumrep,
    condition_scale,
    growth_bound_check,
    limit_residual,
    mp,
    mp_raw,
    mp_sumrep,
    scaled_value,
    wilson,
    wilson_raw,
    wilson_sumrep,
)
from askey.hypergeom import PfqSpec, chu_vandermonde, pfq, pfq_terms, whipple_sum
from askey.identities import (
    CATALOG,
    IdentityId,
    IdentityInput,
    base_terms,
    degenerate,
    lhs,
    lhs_derivative_at_zero,
    rhs_terms,
    rhs_truncated,
    sample_input,
    series_coefficient,
    skip_reason,
)
from askey.quadrature import (
    Domain,
    integrate,
    orthogonality_offdiag,
    parseval_check,
    projection_coherence,
    weight,
)
from askey.records import Outcome, RecordKind, VerificationRecord

SEED_LIMIT = 2**64

CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config.yaml")


def default_sampling() -> dict:
    """SAMPLING section of the packaged config.yaml"""
    with open(CONFIG_PATH) as f:
        return yaml.safe_load(f)["SAMPLING"]


SAMPLING = default_sampling()

# large-parameter pair for the decade ratio of the limit relations
LIMIT_T = (1e3, 1e4)
LIMIT_X = 2.0
DECADE_RATIO = 0.2

COEFFICIENT_MEMBERS = (
    IdentityId.W_T1,
    IdentityId.W_T2,
    IdentityId.CDH_L6,
    IdentityId.CDH_T1,
    IdentityId.CDH_T3,
    IdentityId.CH_T1,
    IdentityId.CH_T2,
    IdentityId.MP_T1,
    IdentityId.MP_T3,
)

Check = Callable[[np.random.Generator, dict], Optional[float]]


@dataclass(frozen=True)
class PropertyDescriptor:
    module: str
    check: Check
    draws: int
    tolerance: float
    description: str


@dataclass
class PropertyCase:
    """Outcome of one property run, a function of (name, seed, draws, tolerance) only"""

    name: str
    seed: int
    draws: int
    tolerance: float
    outcome: Outcome = Outcome.SKIP
    worst_error: Optional[float] = None
    diagnostic: Dict[str, object] = field(default_factory=dict)

    def to_record(self, trial: int = 0, wall_time_ms: float = 0.0) -> VerificationRecord:
        reason = None
        if self.outcome is not Outcome.PASS:
            reason = self.diagnostic.get("error") or f"worst error {self.worst_error!r}"
        return VerificationRecord(
            kind=RecordKind.PROPERTY,
            tag=self.name,
            trial=trial,
            inputs={
                "seed": self.seed,
                "draws": self.draws,
                "tolerance": self.tolerance,
                "diagnostic": self.diagnostic,
            },
            rel_err=self.worst_error,
            outcome=self.outcome,
            reason=reason,
            wall_time_ms=wall_time_ms,
        )


PROPERTIES: Dict[str, PropertyDescriptor] = {}


def register(name: str, module: str, draws: int, tolerance: float):
    def wrap(check: Check) -> Check:
        PROPERTIES[name] = PropertyDescriptor(
            module, check, draws, tolerance, (check.__doc__ or "").strip()
        )
        return check

    return wrap


def case_generator(seed: int, name: str, index: int) -> np.random.Generator:
    """Philox stream keyed by (seed, property), counter set by the draw index

    Every draw owns its own generator, so a draw reproduces bit for bit
    whatever ran before it or on which thread.
    """
    if not 0 <= seed < SEED_LIMIT:
        raise DomainError(f"seed={seed} is not a 64-bit unsigned integer")
    stream = zlib.crc32(name.encode("utf-8"))
    key = np.array([seed, stream], dtype=np.uint64)
    counter = np.array([0, index, 0, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


# sampling helpers


def _uniform(rng, bounds) -> float:
    return float(rng.uniform(bounds[0], bounds[1]))


def _positive(rng, sampling) -> float:
    return _uniform(rng, sampling["RE_RANGE"])


def _complex(rng, sampling) -> complex:
    return complex(_positive(rng, sampling), _uniform(rng, sampling["IM_RANGE"]))


def _paired(rng, sampling) -> bool:
    return bool(rng.random() < sampling["PAIR_PROBABILITY"])


def _angle(rng, sampling) -> float:
    return _uniform(rng, sampling["ANGLE_RANGE"])


def _x(rng, sampling, family: Family) -> float:
    line = "WHOLE_LINE_X" if family.whole_line else "HALF_LINE_X"
    return _uniform(rng, sampling[line])


def _wilson(rng, sampling, pairs: bool = True) -> WilsonParams:
    if pairs and _paired(rng, sampling):
        a = _complex(rng, sampling)
        return WilsonParams(a, a.conjugate(), _positive(rng, sampling), _positive(rng, sampling))
    return WilsonParams(*(_positive(rng, sampling) for _ in range(4)))


def _cdh(rng, sampling, pairs: bool = True) -> CdhParams:
    if pairs and _paired(rng, sampling):
        b = _complex(rng, sampling)
        return CdhParams(_positive(rng, sampling), b, b.conjugate())
    return CdhParams(*(_positive(rng, sampling) for _ in range(3)))


def _chahn(rng, sampling) -> ChahnParams:
    return ChahnParams(_complex(rng, sampling), _complex(rng, sampling))


def _chahn_shifted(rng, sampling):
    """(source, c) with one common imaginary part"""
    eta = _uniform(rng, sampling["IM_RANGE"])
    a, b, c = (complex(_positive(rng, sampling), eta) for _ in range(3))
    return ChahnParams(a, b), c


def _mp(rng, sampling) -> MpParams:
    return MpParams(_positive(rng, sampling), _angle(rng, sampling))


_RANDOM_PARAMS = {
    Family.WILSON: _wilson,
    Family.CDH: _cdh,
    Family.CHAHN: _chahn,
    Family.MP: _mp,
}


def _family(rng) -> Family:
    return list(Family)[int(rng.integers(0, len(Family)))]


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _unit_sum_scale(numerator, denominator) -> float:
    terms = pfq_terms(PfqSpec(tuple(numerator), tuple(denominator), 1))
    return max(1.0, sum(abs(t) for t in terms))


def _brute_force(numerator, denominator):
    terms = list(pfq_terms(PfqSpec(tuple(numerator), tuple(denominator), 1)))
    return sum(terms), max(1.0, sum(abs(t) for t in terms))


# arith


@register("pochhammer-split", "arith", draws=1000, tolerance=1e-12)
def _pochhammer_split(rng, sampling):
    """(z)_{m+n} = (z)_m (z+m)_n"""
    z = _complex(rng, sampling)
    m, n = (int(v) for v in rng.integers(0, 31, 2))
    return _rel(pochhammer(z, m) * pochhammer(z + m, n), pochhammer(z, m + n))


@register("pochhammer-gamma-ratio", "arith", draws=1000, tolerance=1e-11)
def _pochhammer_gamma_ratio(rng, sampling):
    """(z)_n Gamma(z) = Gamma(z + n) for Re z > 0"""
    z = _complex(rng, sampling)
    n = int(rng.integers(0, 31))
    return _rel(pochhammer(z, n) * gamma(z), gamma(z + n))


@register("bounds-w1..w4", "arith", draws=10_000, tolerance=1e-12)
def _bounds(rng, sampling):
    """The four Pochhammer bounds, as relative excess over the bounding side"""
    u = complex(rng.uniform(1e-3, 5), rng.uniform(-5, 5))
    v = rng.uniform(0, 5) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    n = int(rng.integers(0, 51))
    k = int(rng.integers(0, n + 1))
    j = int(rng.integers(1, 51))

    lower, upper = bound_margin(BoundId.B1, u, v, j, k, n)
    excess = max(0.0, upper / lower - 1)
    for bound in (BoundId.B2, BoundId.B3, BoundId.B4):
        lower, upper = bound_margin(bound, u, v, j, k, n)
        excess = max(excess, lower / upper - 1)
    return excess


@register("gamma-recurrence", "arith", draws=1000, tolerance=1e-12)
def _gamma_recurrence(rng, sampling):
    """Gamma(z + 1) = z Gamma(z)"""
    z = _complex(rng, sampling)
    return _rel(z * gamma(z), gamma(z + 1))


# hypergeom


@register("chu-vandermonde", "hypergeom", draws=100, tolerance=1e-11)
def _chu_vandermonde(rng, sampling):
    """Terminating 2F1 at unit argument against its closed form"""
    n = int(rng.integers(0, 21))
    b, c = _complex(rng, sampling), _complex(rng, sampling)
    direct, scale = _brute_force([-n, b], [c])
    return abs(direct - chu_vandermonde(n, b, c)) / scale


@register("whipple", "hypergeom", draws=100, tolerance=1e-10)
def _whipple(rng, sampling):
    """Terminating 3F2 in Whipple form against the gamma quotient"""
    n = int(rng.integers(0, 16))
    k = int(rng.integers(0, n + 1))
    re_a, re_b, re_c = (_positive(rng, sampling) for _ in range(3))
    ap, bp, cp = k - n, k + n + 2 * re_a + 2 * re_b - 1, k + re_a + re_c
    direct, scale = _brute_force([ap, bp, cp], [(ap + bp + 1) / 2, 2 * cp])
    return abs(whipple_sum(ap, bp, cp) - direct) / scale


@register("pfq-permutation", "hypergeom", draws=100, tolerance=1e-13)
def _pfq_permutation(rng, sampling):
    """A terminating series does not depend on parameter order"""
    numerator = [-int(rng.integers(0, 11)), *(_complex(rng, sampling) for _ in range(3))]
    denominator = [_complex(rng, sampling) for _ in range(3)]
    base = pfq(PfqSpec(tuple(numerator), tuple(denominator), 1)).value
    shuffled = PfqSpec(
        tuple(numerator[i] for i in rng.permutation(len(numerator))),
        tuple(denominator[i] for i in rng.permutation(len(denominator))),
        1,
    )
    _, scale = _brute_force(numerator, denominator)
    return abs(pfq(shuffled).value - base) / scale


@register("pfq-tol-halving", "hypergeom", draws=100, tolerance=1.0)
def _pfq_tol_halving(rng, sampling):
    """Change on halving tol, in units of the larger error estimate"""
    numerator = tuple(_complex(rng, sampling) for _ in range(3))
    denominator = tuple(_complex(rng, sampling) for _ in range(2))
    z = 0.9 * rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    coarse = pfq(PfqSpec(numerator, denominator, z), tol=1e-8)
    fine = pfq(PfqSpec(numerator, denominator, z), tol=5e-9)
    if not (coarse.converged and fine.converged):
        raise NonConvergence("series did not converge inside the 0.9 disk")
    bound = max(coarse.abs_err_est, fine.abs_err_est) + 1e-15 * max(1.0, abs(fine.value))
    return abs(coarse.value - fine.value) / bound


# families

_DEFINITION = {
    Family.WILSON: (wilson, wilson_sumrep, (0.5, 5.0)),
    Family.CDH: (cdh, cdh_sumrep, None),
    Family.CHAHN: (chahn, chahn_sumrep, None),
    Family.MP: (mp, mp_sumrep, None),
}


@register("sumrep-agreement", "families", draws=20, tolerance=1e-10)
def _sumrep_agreement(rng, sampling):
    """Definition against sum representation, in units of the condition scale, n <= 8"""
    family = _family(rng)
    params = _RANDOM_PARAMS[family](rng, sampling)
    evaluator, sumrep, x_range = _DEFINITION[family]
    x = _uniform(rng, x_range) if x_range else _x(rng, sampling, family)
    return max(
        abs(evaluator(n, x, params) - sumrep(n, x, params)) / condition_scale(n, x, params)
        for n in range(9)
    )


def _symmetry(evaluator, params, others, x, n) -> float:
    base = evaluator(n, x, params)
    worst = 0.0
    for other in others:
        scale = max(condition_scale(n, x, params), condition_scale(n, x, other))
        worst = max(worst, abs(evaluator(n, x, other) - base) / scale)
    return worst


@register("wilson-symmetry", "families", draws=20, tolerance=1e-10)
def _wilson_symmetry(rng, sampling):
    """Wilson values under all 24 parameter orders"""
    params = _wilson(rng, sampling)
    x = _x(rng, sampling, Family.WILSON)
    n = int(rng.integers(0, 7))
    others = [WilsonParams(*order) for order in itertools.permutations(params.as_tuple())]
    return _symmetry(wilson, params, others, x, n)


@register("cdh-symmetry", "families", draws=20, tolerance=1e-10)
def _cdh_symmetry(rng, sampling):
    """Continuous dual Hahn values under all 6 parameter orders"""
    params = _cdh(rng, sampling)
    x = _x(rng, sampling, Family.CDH)
    n = int(rng.integers(0, 7))
    others = [CdhParams(*order) for order in itertools.permutations(params.as_tuple())]
    return _symmetry(cdh, params, others, x, n)


@register("chahn-symmetry", "families", draws=20, tolerance=1e-10)
def _chahn_symmetry(rng, sampling):
    """Continuous Hahn values under a <-> b"""
    params = _chahn(rng, sampling)
    x = _x(rng, sampling, Family.CHAHN)
    n = int(rng.integers(0, 7))
    return _symmetry(chahn, params, [ChahnParams(params.b, params.a)], x, n)


@register("wilson-degree", "families", draws=20, tolerance=1e-8)
def _wilson_degree(rng, sampling):
    """n-th difference in x^2 is the leading coefficient, the next one vanishes"""
    params = _wilson(rng, sampling, pairs=False)
    n = int(rng.integers(1, 5))
    values = np.array([wilson(n, math.sqrt(1.0 + j), params) for j in range(n + 2)])
    expected = (-1) ** n * math.factorial(n) * pochhammer(n + params.total - 1, n).real
    leading = np.abs(np.diff(values, n) - expected) / abs(expected)
    vanishing = abs(np.diff(values, n + 1)[0]) / abs(expected)
    return float(max(leading.max(), vanishing))


_RAW = {
    Family.WILSON: lambda n, x, p: wilson_raw(n, x, *p.as_tuple()),
    Family.CDH: lambda n, x, p: cdh_raw(n, x, *p.as_tuple()),
    Family.MP: lambda n, x, p: mp_raw(n, x, p.lam, p.phi),
}


@register("realness", "families", draws=50, tolerance=1e-9)
def _realness(rng, sampling):
    """Imaginary residue relative to 1 + |value| for the real-valued families"""
    family = list(_RAW)[int(rng.integers(0, len(_RAW)))]
    params = _RANDOM_PARAMS[family](rng, sampling)
    x = _x(rng, sampling, family)
    n = int(rng.integers(0, 8))
    value = complex(_RAW[family](n, x, params))
    return abs(value.imag) / (1 + abs(value))


GROWTH_FAMILIES = (Family.CDH, Family.CHAHN, Family.MP)


@register("growth-bounds", "families", draws=10, tolerance=1e-9)
def _growth_bounds(rng, sampling):
    """Relative excess over the fitted growth envelope at degrees 0..30"""
    family = GROWTH_FAMILIES[int(rng.integers(0, len(GROWTH_FAMILIES)))]
    params = _RANDOM_PARAMS[family](rng, sampling)
    x = _x(rng, sampling, family)
    try:
        k, sigma = growth_bound_check(family, 30, x, params)
    except FitError:
        return math.inf
    return max(
        max(0.0, abs(scaled_value(n, x, params)) / (k * (1 + n) ** sigma) - 1)
        for n in range(31)
    )


@register("mp-growth-sigma", "families", draws=10, tolerance=0.5)
def _mp_growth_sigma(rng, sampling):
    """Fitted MP exponent above 2|lambda + ix| + 1"""
    params = _mp(rng, sampling)
    x = _x(rng, sampling, Family.MP)
    try:
        _, sigma = growth_bound_check(Family.MP, 40, x, params)
    except FitError:
        return math.inf
    return max(0.0, sigma - (2 * abs(complex(params.lam, x)) + 1))


_LIMIT_TARGET = {
    LimitKind.W_CDH: (Family.CDH, _cdh),
    LimitKind.W_CH: (Family.CHAHN, _chahn),
    LimitKind.CDH_MP: (Family.MP, _mp),
}


def _decade_ratio(near: float, far: float) -> float:
    if near == 0:
        return 0.0 if far == 0 else math.inf
    return far / near


@register("limit-rates", "families", draws=20, tolerance=DECADE_RATIO)
def _limit_rates(rng, sampling):
    """Decade ratio of the limit residuals in t, n = 1..4"""
    kind = list(LimitKind)[int(rng.integers(0, len(LimitKind)))]
    family, draw = _LIMIT_TARGET[kind]
    params = draw(rng, sampling)
    low = 0.1 if not family.whole_line else -LIMIT_X
    x = float(rng.uniform(low, LIMIT_X))
    return max(
        _decade_ratio(*(limit_residual(kind, n, x, params, t) for t in LIMIT_T))
        for n in range(1, 5)
    )


# connections


@register("connection-delta", "connections", draws=10, tolerance=1e-12)
def _connection_delta(rng, sampling):
    """Free parameters at their source values give the Kronecker delta"""
    w = _wilson(rng, sampling, pairs=False)
    c = _cdh(rng, sampling, pairs=False)
    h, _ = _chahn_shifted(rng, sampling)
    m = _mp(rng, sampling)
    worst = 0.0
    for n in range(7):
        for k in range(n + 1):
            delta = 1.0 if k == n else 0.0
            values = (
                wilson_connect_1p(n, k, w, w.d).value,
                wilson_connect_3p(n, k, w, w.b, w.c, w.d).value,
                cdh_connect_2p(n, k, c, c.b, c.c).value,
                cdh_connect_1p(n, k, c, c.c).value,
                chahn_connect(n, k, h, h.b).value,
                chahn_connect(n, k, h, h.b, reduced=False).value,
                mp_connect(n, k, m, m.phi).value,
            )
            worst = max(worst, *(abs(value - delta) for value in values))
    return worst


def _expansion_pair(family: Family, rng, sampling):
    if family is Family.WILSON:
        source = _wilson(rng, sampling, pairs=False)
        return source, WilsonParams(source.a, source.b, source.c, _positive(rng, sampling))
    if family is Family.CDH:
        source = _cdh(rng, sampling)
        return source, CdhParams(source.a, _positive(rng, sampling), _positive(rng, sampling))
    if family is Family.CHAHN:
        source = _chahn(rng, sampling)
        return source, ChahnParams(source.a, _complex(rng, sampling))
    source = _mp(rng, sampling)
    return source, MpParams(source.lam, _angle(rng, sampling))


def _expansion_scale(n: int, x: float, source, target) -> float:
    total = condition_scale(n, x, source)
    for k in range(n + 1):
        coeff = connection_coefficient(n, k, source, target).value
        total += abs(coeff) * condition_scale(k, x, target)
    return total


@register("connection-expansion", "connections", draws=20, tolerance=1e-11)
def _connection_expansion(rng, sampling):
    """Source polynomial against its expansion in the target basis, n <= 8"""
    family = _family(rng)
    source, target = _expansion_pair(family, rng, sampling)
    x = _x(rng, sampling, family)
    n = int(rng.integers(0, 9))
    left, right = expand(family, n, source, target, x)
    return abs(left - right) / _expansion_scale(n, x, source, target)


@register("wilson-transitivity", "connections", draws=5, tolerance=1e-11)
def _wilson_transitivity(rng, sampling):
    """Connecting d -> h and back composes to the identity, n <= 6"""
    narrow = {**sampling, "RE_RANGE": (0.3, 1.5)}
    source = _wilson(rng, narrow, pairs=False)
    target = WilsonParams(source.a, source.b, source.c, _positive(rng, narrow))
    forward = connection_matrix(Family.WILSON, 6, source, target)
    backward = connection_matrix(Family.WILSON, 6, target, source)
    residual = np.abs(forward @ backward - np.eye(7))
    scale = np.abs(forward) @ np.abs(backward)
    lower = np.tril_indices(7)
    return float(np.max(residual[lower] / scale[lower]))


@register("chahn-parity", "connections", draws=10, tolerance=0.0)
def _chahn_parity(rng, sampling):
    """Coefficients with odd n - k vanish exactly"""
    source, c = _chahn_shifted(rng, sampling)
    target = ChahnParams(source.a, c)
    worst = 0.0
    for n in range(12):
        for k in range((n + 1) % 2, n + 1, 2):
            worst = max(
                worst,
                abs(chahn_connect(n, k, source, c).value),
                abs(connection_coefficient(n, k, source, target).value),
            )
    return worst


@register("chahn-whipple-reduction", "connections", draws=10, tolerance=1e-12)
def _chahn_whipple_reduction(rng, sampling):
    """Shift-reduced continuous Hahn 3F2 against the Whipple quotient"""
    source, c = _chahn_shifted(rng, sampling)
    ra, rb, rc = source.a.real, source.b.real, c.real
    worst = 0.0
    for n in range(9):
        for k in range(n + 1):
            direct, closed = chahn_whipple_factor(n, k, source, c)
            scale = _unit_sum_scale(
                [k - n, k + n + 2 * ra + 2 * rb - 1, k + ra + rc],
                [2 * k + 2 * ra + 2 * rc, k + ra + rb],
            )
            worst = max(worst, abs(direct - closed) / scale)
    return worst


@register("wilson-saalschutz-reduction", "connections", draws=10, tolerance=1e-12)
def _wilson_saalschutz_reduction(rng, sampling):
    """Three-parameter Wilson coefficient with f = b, g = c equals the one-parameter one"""
    w = _wilson(rng, sampling, pairs=False)
    h = _positive(rng, sampling)
    a, b, c, d = w.as_tuple()
    s = w.total
    worst = 0.0
    for n in range(7):
        for k in range(n + 1):
            three = wilson_connect_3p(n, k, w, b, c, h).value
            one = wilson_connect_1p(n, k, w, h).value
            m = n - k
            prefactor = abs(
                binomial(n, k)
                * pochhammer(k + a + b, m)
                * pochhammer(k + a + c, m)
                * pochhammer(k + a + d, m)
                * pochhammer_ratio([n + s - 1], [k + a + b + c + h - 1], k)
            )
            series = _unit_sum_scale(
                [k - n, k + n + s - 1, k + a + h], [2 * k + a + b + c + h, k + a + d]
            )
            worst = max(worst, abs(three - one) / max(1.0, prefactor * series))
    return worst


@register("cdh-connect-limit", "connections", draws=10, tolerance=DECADE_RATIO)
def _cdh_connect_limit(rng, sampling):
    """Scaled Wilson coefficients approach the dual Hahn ones at rate 1/d"""
    p = _cdh(rng, sampling, pairs=False)
    f, g = _positive(rng, sampling), _positive(rng, sampling)
    n = int(rng.integers(1, 5))
    return max(
        _decade_ratio(*(cdh_limit_residual(n, k, p, f, g, d) for d in LIMIT_T))
        for k in range(n + 1)
    )


# identities


@register("w-gf1-base-consistency", "identities", draws=10, tolerance=1e-12)
def _w_gf1_base_consistency(rng, sampling):
    """First Wilson theorem at h = d against the product generating function, term by term"""
    inp = degenerate(sample_input(IdentityId.W_T1, rng, sampling))
    base = IdentityInput(IdentityId.W_GF1, inp.params, {}, inp.x, inp.rho)
    return max(
        abs(t - b) / (1 + abs(b)) for t, b in zip(rhs_terms(inp, 12), rhs_terms(base, 12))
    )


_THEOREMS = tuple(identity for identity in IdentityId if CATALOG[identity].free is not None)


@register("identity-degeneration", "identities", draws=20, tolerance=1e-12)
def _identity_degeneration(rng, sampling):
    """Theorem terms at the degenerate free parameter against the base terms"""
    identity = _THEOREMS[int(rng.integers(0, len(_THEOREMS)))]
    inp = sample_input(identity, rng, sampling)
    theorem = rhs_terms(degenerate(inp), 12)
    base = base_terms(inp, 12)
    return max(abs(t - b) / (1 + abs(b)) for t, b in zip(theorem, base))


@register("identity-refinement", "identities", draws=20, tolerance=1e-8)
def _identity_refinement(rng, sampling):
    """Error at K = 32 above the error at K = 16 plus twice its tail estimate"""
    identity = list(IdentityId)[int(rng.integers(0, len(IdentityId)))]
    inp = sample_input(identity, rng, sampling, radius=0.25)
    if skip_reason(inp) is not None:
        return None
    reference = lhs(inp)
    scale = max(1.0, abs(reference))
    half = rhs_truncated(inp, 16)
    full = rhs_truncated(inp, 32)
    err_half = abs(half.value - reference) / scale
    err_full = abs(full.value - reference) / scale
    return max(0.0, err_full - err_half - 2 * half.abs_err_est)


@register("coefficient-extraction", "identities", draws=5, tolerance=1e-6)
def _coefficient_extraction(rng, sampling):
    """First Maclaurin coefficient of the right side against d lhs / d rho at 0"""
    identity = COEFFICIENT_MEMBERS[int(rng.integers(0, len(COEFFICIENT_MEMBERS)))]
    inp = replace(sample_input(identity, rng, sampling), rho=0j)
    first = series_coefficient(inp, 1)
    return abs(first - lhs_derivative_at_zero(inp)) / max(1.0, abs(first))


@register("mp-closed-equivalence", "identities", draws=100, tolerance=1e-12)
def _mp_closed_equivalence(rng, sampling):
    """Both closed forms of the Meixner-Pollaczek power identity"""
    inp = sample_input(IdentityId.MP_T1E, rng, sampling)
    closed = rhs_truncated(inp, 0).value
    return abs(lhs(inp) - closed) / abs(closed)


# quadrature

WEIGHT_POINTS = 10_000
WEIGHT_RANGE = 40.0


@register("weight-positivity", "quadrature", draws=4, tolerance=0.0)
def _weight_positivity(rng, sampling):
    """Fraction of sampled points with a negative or non-finite weight"""
    family = _family(rng)
    params = _RANDOM_PARAMS[family](rng, sampling)
    low = -WEIGHT_RANGE if family.whole_line else 0.0
    bad = 0
    for x in rng.uniform(low, WEIGHT_RANGE, WEIGHT_POINTS):
        w = weight(family, float(x), params)
        if not (math.isfinite(w) and w >= 0):
            bad += 1
    return bad / WEIGHT_POINTS


@register("quadrature-self-consistency", "quadrature", draws=4, tolerance=1.0)
def _quadrature_self_consistency(rng, sampling):
    """Change on doubling the budget, in units of twice the coarse error estimate"""
    family = _family(rng)
    params = _RANDOM_PARAMS[family](rng, sampling)
    frequency = _uniform(rng, (1.0, 4.0))

    def f(x):
        return weight(family, x, params) * math.cos(frequency * x)

    domain = Domain.of(family)
    results = []
    for budget in (400, 800):
        try:
            results.append(integrate(f, domain, tol=1e-15, budget=budget))
        except BudgetExceeded as e:
            results.append(e.partial)
    coarse, fine = results
    change = abs(fine.value - coarse.value)
    if change == 0:
        return 0.0
    return change / (2 * coarse.abs_err_est) if coarse.abs_err_est > 0 else math.inf


@register("orthogonality", "quadrature", draws=3, tolerance=1e-8)
def _orthogonality(rng, sampling):
    """Off-diagonal Gram entries relative to the diagonal ones, m, n <= 5"""
    family = _family(rng)
    params = _RANDOM_PARAMS[family](rng, sampling)
    worst = 0.0
    for m, n in itertools.combinations(range(6), 2):
        result = orthogonality_offdiag(family, m, n, params)
        worst = max(worst, abs(result.value) / result.scale)
    return worst


@register("wilson-projection-coherence", "quadrature", draws=3, tolerance=1e-6)
def _wilson_projection_coherence(rng, sampling):
    """Projection of the first Wilson theorem onto W_k, k <= 3"""
    inp = sample_input(IdentityId.W_T1, rng, sampling)
    worst = 0.0
    for k in range(4):
        projected, expected = projection_coherence(inp, k)
        worst = max(worst, abs(projected - expected) / max(1.0, abs(expected)))
    return worst


@register("wilson-parseval", "quadrature", draws=2, tolerance=1e-6)
def _wilson_parseval(rng, sampling):
    """L2 norm of the first Wilson theorem against the sum of its squared coefficients"""
    inp = sample_input(IdentityId.W_T1, rng, sampling, radius=0.3)
    energy, series = parseval_check(inp)
    return abs(series - energy) / energy


def _descriptor(name: str) -> PropertyDescriptor:
    try:
        return PROPERTIES[name]
    except KeyError:
        raise UnknownProperty(f"no property named {name!r}")


def run_property(
    name: str,
    seed: int,
    draws: Optional[int] = None,
    tol: Optional[float] = None,
    sampling: Optional[dict] = None,
) -> PropertyCase:
    """Run a registered property over seeded random draws

    Draw i uses case_generator(seed, name, i). The case passes when the
    worst error over the evaluated draws is within tol; a draw that
    raises fails the case, and a case whose draws were all skipped is a
    skip.

    Args:
        name (str): registered property name
        seed (int): 64-bit unsigned seed
        draws (int): number of draws, the registered default when None
        tol (float): threshold on the worst error, the registered default when None
        sampling (dict): parameter ranges, SAMPLING when None

    Return:
        PropertyCase
    """
    descriptor = _descriptor(name)
    draws = descriptor.draws if draws is None else draws
    tol = descriptor.tolerance if tol is None else tol
    sampling = SAMPLING if sampling is None else sampling
    if draws < 1:
        raise DomainError(f"draws={draws} must be at least 1")
    if tol < 0:
        raise DomainError(f"tolerance={tol} must be non-negative")

    case = PropertyCase(name, seed, draws, tol)
    worst, worst_draw, skipped, error = None, None, 0, None
    for index in range(draws):
        rng = case_generator(seed, name, index)
        try:
            value = descriptor.check(rng, sampling)
        except (ArithmeticError, DomainError, RuntimeError) as e:
            error = f"draw {index}: {type(e).__name__}: {e}"
            worst, worst_draw = math.inf, index
            break
        if value is None:
            skipped += 1
            continue
        value = float(value)
        if math.isnan(value):
            value = math.inf
        if worst is None or value > worst:
            worst, worst_draw = value, index

    case.worst_error = worst
    case.diagnostic = {
        "module": descriptor.module,
        "worst_draw": worst_draw,
        "skipped": skipped,
        "error": error,
    }
    if error is not None or (worst is not None and worst > tol):
        case.outcome = Outcome.FAIL
    elif worst is None:
        case.outcome = Outcome.SKIP
    else:
        case.outcome = Outcome.PASS
    return case


def property_names(module: Optional[str] = None) -> List[str]:
    return sorted(
        name for name, d in PROPERTIES.items() if module is None or d.module == module
    )


class PropertyRunner:
    def __init__(self, config: dict, logger: Logger = Logger(__name__)):
        self.sampling = config["SAMPLING"]
        self.logger = logger

    def run_one(
        self, name: str, seed: int, draws: Optional[int] = None, tol: Optional[float] = None
    ) -> VerificationRecord:
        started = time.perf_counter()
        case = run_property(name, seed, draws, tol, sampling=self.sampling)
        record = case.to_record(wall_time_ms=(time.perf_counter() - started) * 1000)
        self.logger.debug(
            f"{name}: {case.outcome.value} worst={case.worst_error} draws={case.draws}"
        )
        if case.outcome is Outcome.FAIL:
            self.logger.warning(f"{name} failed: {record.reason}")
        return record

    def run(self, seed: int, names: Optional[Iterable[str]] = None) -> List[VerificationRecord]:
        names = property_names() if names is None else list(names)
        self.logger.info(f"In process: {len(names)} properties with seed {seed}.")

        records = []
        for name in names:
            records.append(self.run_one(name, seed))
            self.logger.info(f"End of processing: {name}.")

        failed = sum(record.outcome is Outcome.FAIL for record in records)
        self.logger.info(f"Process completed: {len(records)} property records, {failed} failed.")
        return records
