import cmath
import heapq
import math
import time
from dataclasses import dataclass, replace
from enum import Enum
from logging import Logger
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from askey.arith import log_gamma, log_gamma_imag_sq, pochhammer_ratio
from askey.error_handler import BudgetExceeded, DomainError, NonConvergence
from askey.families import Family, FamilyParams, family_of, scaled_value
from askey.hypergeom import PfqSpec, pfq
from askey.identities import (
    IdentityId,
    IdentityInput,
    check_hypotheses,
    input_echo,
    lhs,
    rhs_coefficient,
    sample_input,
    skip_reason,
    target_params,
)
from askey.records import Outcome, RecordKind, VerificationRecord, relative_error

TOL = 1e-6
QUAD_TOL = 1e-11
BUDGET = 200_000
CUTOFF_RATIO = 1e-18
LOG_LIMIT = 700.0
K_MAX = 6
INITIAL_PANELS = 8
CUTOFF_START = 1.0
MAX_DOUBLINGS = 40
PARSEVAL_TERMS = 16

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1], positive half
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

NODES = np.concatenate([-np.array(_XGK[:7]), [0.0], np.array(_XGK[6::-1])])
KRONROD_WEIGHTS = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[6::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = [_WG[0], _WG[1], _WG[2], _WG[3], _WG[2], _WG[1], _WG[0]]

# fractions of X sampled when testing the integrand bound at X
_PROBES = np.linspace(0.75, 1.0, 5)


class Domain(Enum):
    HALF_LINE = "half-line"
    WHOLE_LINE = "whole-line"

    @classmethod
    def of(cls, family: Family) -> "Domain":
        return cls.WHOLE_LINE if family.whole_line else cls.HALF_LINE


@dataclass
class QuadResult:
    value: Union[float, complex]
    abs_err_est: float
    evaluations: int
    # truncation point X; the larger of the two on the whole line
    cutoff: float
    # sqrt(G_mm G_nn), set by orthogonality_offdiag
    scale: Optional[float] = None


# weights


def _family(family: Union[Family, str], params: FamilyParams) -> Family:
    family = Family(family)
    if family_of(params) is not family:
        raise DomainError(f"{family.value} weight called with {type(params).__name__}")
    return family


def log_weight(family: Union[Family, str], x: float, params: FamilyParams) -> float:
    """log of the orthogonality weight; -inf where the weight vanishes"""
    family = _family(family, params)
    if not family.whole_line and x < 0:
        raise DomainError(f"{family.value} weight lives on x >= 0, got x={x}")

    y = 1j * x
    if family is Family.MP:
        return (2 * params.phi - math.pi) * x + 2 * log_gamma(params.lam + y).real

    if family is Family.CHAHN:
        return 2 * sum(log_gamma(p + y).real for p in params.as_tuple())

    if x == 0:
        return -math.inf
    total = 2 * sum(log_gamma(p + y).real for p in params.as_tuple())
    return total - log_gamma_imag_sq(2 * x)


def weight(family: Union[Family, str], x: float, params: FamilyParams) -> float:
    """Orthogonality weight, exponentiated once from log_weight

    Example:
        >>> weight(Family.WILSON, 0.0, WilsonParams(1, 1, 1, 1))
        0.0
    """
    logw = log_weight(family, x, params)
    if logw > LOG_LIMIT:
        raise OverflowError(f"log weight {logw:.1f} at x={x} exceeds {LOG_LIMIT}")
    if logw < -LOG_LIMIT:
        return 0.0
    return math.exp(logw)


def polynomial(k: int, x: float, params: FamilyParams) -> complex:
    """P_k(x) rebuilt from the sum representation"""
    g = family_of(params).growth_order
    return scaled_value(k, x, params) * math.factorial(k) ** g


# integration


@dataclass
class _Panel:
    lo: float
    hi: float
    value: complex
    error: float
    absolute: float


class _Integrator:
    def __init__(self, f: Callable[[float], complex], budget: int):
        self.f = f
        self.budget = budget
        self.evaluations = 0
        self.peak = 0.0
        self.complex_valued = False

    def values(self, points: np.ndarray) -> np.ndarray:
        if self.evaluations + len(points) > self.budget:
            raise _OutOfBudget()
        self.evaluations += len(points)
        values = np.array([complex(self.f(float(x))) for x in points])
        if not np.all(np.isfinite(values)):
            raise ArithmeticError("integrand is not finite on the domain")
        self.complex_valued = self.complex_valued or bool(np.any(values.imag != 0))
        self.peak = max(self.peak, float(np.max(np.abs(values))))
        return values

    def panel(self, lo: float, hi: float) -> _Panel:
        centre, half = (lo + hi) / 2, (hi - lo) / 2
        values = self.values(centre + half * NODES)
        kronrod = half * (KRONROD_WEIGHTS @ values)
        gauss = half * (GAUSS_WEIGHTS @ values)
        absolute = half * float(KRONROD_WEIGHTS @ np.abs(values))
        return _Panel(lo, hi, kronrod, abs(kronrod - gauss), absolute)

    def cutoff(self, sign: int, ratio: float) -> float:
        """Double X until max |f| near sign * X is below ratio * running peak"""
        self.values(sign * np.linspace(0.0, CUTOFF_START, 9))
        X = CUTOFF_START
        for _ in range(MAX_DOUBLINGS):
            bound = float(np.max(np.abs(self.values(sign * X * _PROBES))))
            if bound <= ratio * self.peak:
                return X
            X *= 2
        raise BudgetExceeded(f"integrand does not decay below {ratio:g} of its peak")


class _OutOfBudget(Exception):
    pass


def integrate(
    f: Callable[[float], complex],
    domain: Union[Domain, str],
    tol: float = QUAD_TOL,
    budget: int = BUDGET,
    cutoff_ratio: float = CUTOFF_RATIO,
) -> QuadResult:
    """Adaptive 15-point Gauss-Kronrod over (0, inf) or (-inf, inf)

    The infinite range is cut at X, found by doubling from 1 until the
    integrand near X falls below cutoff_ratio times its running peak; on the
    whole line each side is searched on its own. Panels are bisected
    worst-first until the summed |Kronrod - Gauss| is within tol times the
    integral of |f|.

    Example:
        >>> round(integrate(lambda x: math.exp(-x), "half-line").value, 12)
        1.0
    """
    domain = Domain(domain)
    if not tol > 0:
        raise DomainError(f"tol={tol} must be positive")

    integrator = _Integrator(f, budget)
    heap: List[Tuple[float, int, _Panel]] = []
    upper = lower = 0.0

    def result() -> QuadResult:
        value = sum(entry[2].value for entry in heap)
        if not integrator.complex_valued:
            value = complex(value).real
        error = sum(entry[2].error for entry in heap) if heap else math.inf
        return QuadResult(value, error, integrator.evaluations, max(upper, lower))

    try:
        upper = integrator.cutoff(1, cutoff_ratio)
        if domain is Domain.WHOLE_LINE:
            lower = integrator.cutoff(-1, cutoff_ratio)
            edges = np.concatenate(
                [np.linspace(-lower, 0.0, INITIAL_PANELS // 2 + 1)[:-1],
                 np.linspace(0.0, upper, INITIAL_PANELS // 2 + 1)]
            )
        else:
            edges = np.linspace(0.0, upper, INITIAL_PANELS + 1)

        for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
            panel = integrator.panel(lo, hi)
            heapq.heappush(heap, (-panel.error, i, panel))
        counter = len(heap)
        error = sum(entry[2].error for entry in heap)
        absolute = sum(entry[2].absolute for entry in heap)

        while error > tol * absolute:
            worst = heap[0][2]
            mid = (worst.lo + worst.hi) / 2
            halves = [integrator.panel(worst.lo, mid), integrator.panel(mid, worst.hi)]
            heapq.heappop(heap)
            error += sum(h.error for h in halves) - worst.error
            absolute += sum(h.absolute for h in halves) - worst.absolute
            for half in halves:
                heapq.heappush(heap, (-half.error, counter, half))
                counter += 1

    except _OutOfBudget:
        raise BudgetExceeded(f"quadrature budget of {budget} evaluations exhausted", result())

    return result()


# Gram entries and orthogonality


def _gram_integrand(family: Family, m: int, n: int, params: FamilyParams):
    def f(x):
        w = weight(family, x, params)
        if w == 0:
            return 0.0
        return w * scaled_value(m, x, params) * scaled_value(n, x, params)

    return f


def gram(
    family: Union[Family, str],
    m: int,
    n: int,
    params: FamilyParams,
    tol: float = QUAD_TOL,
    budget: int = BUDGET,
    scaled: bool = False,
) -> QuadResult:
    """Gram entry: integral of w P_m P_n over the family's domain

    With scaled=True the polynomials are P_n / (n!)^g, as in the identity
    right sides.
    """
    family = _family(family, params)
    result = integrate(_gram_integrand(family, m, n, params), Domain.of(family), tol, budget)
    if not scaled:
        factor = (math.factorial(m) * math.factorial(n)) ** family.growth_order
        result.value *= factor
        result.abs_err_est *= factor
    return result


def orthogonality_offdiag(
    family: Union[Family, str],
    m: int,
    n: int,
    params: FamilyParams,
    tol: float = QUAD_TOL,
    budget: int = BUDGET,
) -> QuadResult:
    """Off-diagonal Gram entry with scale = sqrt(G_mm G_nn) attached"""
    if m == n:
        raise DomainError(f"off-diagonal entry needs m != n, got m = n = {m}")
    result = gram(family, m, n, params, tol, budget)
    diagonal = [abs(gram(family, j, j, params, tol, budget).value) for j in (m, n)]
    result.scale = math.sqrt(diagonal[0] * diagonal[1])
    return result


# corollaries


@dataclass(frozen=True)
class CorollaryDescriptor:
    identity: IdentityId
    anchor: str


class CorollaryId(Enum):
    IW1 = "iw1"
    IW2 = "iw2"
    ICDH1 = "icdh1"
    ICDH2 = "icdh2"
    ICDH3 = "icdh3"
    ICH1 = "ich1"
    ICH2 = "ich2"
    IMP1 = "imp1"
    IMP2 = "imp2"
    IMP3 = "imp3"

    @property
    def descriptor(self) -> CorollaryDescriptor:
        return COROLLARIES[self]

    @property
    def identity(self) -> IdentityId:
        return COROLLARIES[self].identity


COROLLARIES: Dict[CorollaryId, CorollaryDescriptor] = {
    CorollaryId.IW1: CorollaryDescriptor(
        IdentityId.W_T1, "Wilson: 2F1 product against W_k(a, b, c, h), one surviving term"
    ),
    CorollaryId.IW2: CorollaryDescriptor(
        IdentityId.W_T2, "Wilson: quadratic 4F3 against W_k(a, b, c, h)"
    ),
    CorollaryId.ICDH1: CorollaryDescriptor(
        IdentityId.CDH_T1, "continuous dual Hahn: 2F1 against S_k(a, d, f)"
    ),
    CorollaryId.ICDH2: CorollaryDescriptor(
        IdentityId.CDH_T2, "continuous dual Hahn: e^rho 2F2 against S_k(a, b, d)"
    ),
    CorollaryId.ICDH3: CorollaryDescriptor(
        IdentityId.CDH_T3, "continuous dual Hahn: gamma 3F2 against S_k(a, b, d)"
    ),
    CorollaryId.ICH1: CorollaryDescriptor(
        IdentityId.CH_T1, "continuous Hahn: 1F1 product against p_k(a, c)"
    ),
    CorollaryId.ICH2: CorollaryDescriptor(
        IdentityId.CH_T2, "continuous Hahn: quadratic 3F2 against p_k(a, c)"
    ),
    CorollaryId.IMP1: CorollaryDescriptor(
        IdentityId.MP_T1, "Meixner-Pollaczek: power product against P_k(psi)"
    ),
    CorollaryId.IMP2: CorollaryDescriptor(
        IdentityId.MP_T2, "Meixner-Pollaczek: e^rho 1F1 against P_k(psi)"
    ),
    CorollaryId.IMP3: CorollaryDescriptor(
        IdentityId.MP_T3, "Meixner-Pollaczek: gamma 2F1 against P_k(psi)"
    ),
}


def _log_factorial(k: int) -> float:
    return math.lgamma(k + 1)


def scaled_norm(k: int, params: FamilyParams) -> complex:
    """h_k / (k!)^g, the constant the closed-form right sides carry

    h_k is the integral of w P_k^2 in the normalization of the families
    module.
    """
    family = family_of(params)
    log_2pi = math.log(2 * math.pi)

    if family is Family.WILSON:
        a, b, c, d = params.as_tuple()
        s = params.total
        pairs = (a + b, a + c, a + d, b + c, b + d, c + d)
        logh = log_2pi + sum(log_gamma(k + p) for p in pairs) - log_gamma(2 * k + s)
        logh += log_gamma(2 * k + s - 1) - log_gamma(k + s - 1)
        logh -= 2 * _log_factorial(k)
    elif family is Family.CDH:
        a, b, c = params.as_tuple()
        logh = log_2pi + sum(log_gamma(k + p) for p in (a + b, a + c, b + c))
        logh -= _log_factorial(k)
    elif family is Family.CHAHN:
        a, b = params.as_tuple()
        two_a, two_b = 2 * a.real, 2 * b.real
        pairs = (two_a, a + b.conjugate(), a.conjugate() + b, two_b)
        logh = log_2pi + sum(log_gamma(k + p) for p in pairs)
        logh -= cmath.log(2 * k + two_a + two_b - 1) + log_gamma(k + two_a + two_b - 1)
        logh -= 2 * _log_factorial(k)
    else:
        lam, phi = params.as_tuple()
        logh = log_2pi + log_gamma(k + 2 * lam) - 2 * lam * math.log(2 * math.sin(phi))
        logh -= _log_factorial(k)

    return cmath.exp(logh)


def _corollary_input(
    corollary: CorollaryId, params: Optional[FamilyParams], aux: dict, rho: complex
) -> IdentityInput:
    return IdentityInput(corollary.identity, params, dict(aux or {}), 0.0, rho)


# right sides as printed, term for term


def _hyper(numerator: Sequence[complex], denominator: Sequence[complex], z: complex) -> complex:
    result = pfq(PfqSpec(tuple(numerator), tuple(denominator), z))
    if not result.converged:
        raise NonConvergence(f"{len(numerator)}F{len(denominator)} at z={z:.4g} did not converge")
    return result.value


def _exp_log_gammas(plus: Sequence[complex], minus: Sequence[complex] = ()) -> complex:
    return cmath.exp(sum(log_gamma(z) for z in plus) - sum(log_gamma(z) for z in minus))


def _printed_iw1(k, params, aux, rho):
    a, b, c, d = params.as_tuple()
    h = aux["h"]
    s, t = a + b + c + d, a + b + c + h
    gammas = _exp_log_gammas(
        [a + c, k + a + b, k + a + h, k + b + c, k + c + h, k + b + h], [2 * k + t]
    )
    series = _hyper(
        [d - h, 2 * k + s - 1, k + a + b, k + b + c], [k + s - 1, 2 * k + t, k + b + d], rho
    )
    return 2 * math.pi * gammas * pochhammer_ratio([k + s - 1], [b + d], k, z=rho) * series


def _printed_iw2(k, params, aux, rho):
    a, b, c, d = params.as_tuple()
    h = aux["h"]
    s, t = a + b + c + d, a + b + c + h
    gammas = _exp_log_gammas(
        [a + b, a + c, k + a + h, k + b + c, k + b + h, k + c + h], [2 * k + t]
    )
    series = _hyper([2 * k + s - 1, d - h, k + b + c], [2 * k + t, a + d + k], rho)
    return 2 * math.pi * gammas * pochhammer_ratio([k + s - 1, s - 1], [a + d], k, z=rho) * series


def _printed_icdh1(k, params, aux, rho):
    # printed without rho^k
    a, b, d = params.as_tuple()
    f = aux["f"]
    gammas = _exp_log_gammas([k + a + d, k + a + f, k + d + f])
    series = _hyper([b - f, k + a + d], [k + a + b], rho)
    return 2 * math.pi * gammas * pochhammer_ratio([], [a + b, 1], k) * series


def _printed_icdh2(k, params, aux, rho):
    # printed without 2 pi / k!
    a, b, c = params.as_tuple()
    d = aux["d"]
    gammas = _exp_log_gammas([a + b, k + a + d, k + b + d])
    return gammas * pochhammer_ratio([], [a + c], k, z=rho) * _hyper([c - d], [k + a + c], rho)


def _printed_icdh3(k, params, aux, rho):
    # printed without 2 pi / k!, and with -d where the expansion has c - d
    a, b, c = params.as_tuple()
    d, g = aux["d"], aux["gamma"]
    gammas = _exp_log_gammas([a + b, k + a + d, k + b + d])
    series = _hyper([-d, g + k], [k + a + c], rho)
    return gammas * pochhammer_ratio([g], [a + c], k, z=rho) * series


def _chahn_constants(params, aux):
    ra, rb, rc = params.a.real, params.b.real, aux["c"].real
    ac = params.a + aux["c"].conjugate()
    gammas = _exp_log_gammas([2 * ra, ac, ac, 2 * rc], [2 * ra + 2 * rc - 1])
    return ra, rb, rc, ac, 2 * math.pi * gammas


def _printed_ich1(k, params, aux, rho):
    ra, rb, rc, ac, constant = _chahn_constants(params, aux)
    ratio = pochhammer_ratio(
        [k + 2 * ra + 2 * rb - 1, ac, 2 * rc], [1, 2 * rb, (2 * ra + 2 * rc - 1) / 2], k, z=rho / 4
    )
    series = _hyper(
        [(ra + rb + k) / 2, (ra + rb + k + 1) / 2, ra + rb + k - 0.5, rb - rc],
        [ra + rb + (k - 1) / 2, ra + rb + k / 2, rb + k / 2, rb + (k + 1) / 2, ra + rc + k + 0.5],
        -(rho**2) / 4,
    )
    return constant * ratio * series / (2 * k + 2 * ra + 2 * rc - 1)


def _printed_ich2(k, params, aux, rho):
    ra, rb, rc, ac, constant = _chahn_constants(params, aux)
    ratio = pochhammer_ratio(
        [2 * ra + 2 * rb - 1, k + 2 * ra + 2 * rb - 1, ac, 2 * rc],
        [1, ra + rc - 0.5, ra + rb],
        k,
        z=-1j * rho / 4,
    )
    series = _hyper([ra + rb + k - 0.5, rb - rc], [ra + rc + k + 0.5], rho**2)
    return constant * ratio * series / (2 * k + 2 * ra + 2 * rc - 1)


def _mp_constants(k, params, aux, rho):
    """(sin psi, rho sin(psi - phi) / sin psi, 2 pi Gamma(k + 2 lam) / ((2 sin psi)^{2 lam} k!))"""
    lam, phi = params.as_tuple()
    sin_psi = math.sin(aux["psi"])
    shift = rho * math.sin(aux["psi"] - phi) / sin_psi
    norm = 2 * math.pi * math.exp(
        math.lgamma(k + 2 * lam) - 2 * lam * math.log(2 * sin_psi) - _log_factorial(k)
    )
    return sin_psi, shift, norm


def _printed_imp1(k, params, aux, rho):
    lam, phi = params.as_tuple()
    sin_psi, shift, norm = _mp_constants(k, params, aux, rho)
    tilde = rho * math.sin(phi) / (sin_psi - rho * math.sin(aux["psi"] - phi))
    return cmath.exp(-2 * lam * cmath.log(1 - shift)) * norm * tilde**k


def _printed_imp2(k, params, aux, rho):
    phi = params.phi
    sin_psi, shift, norm = _mp_constants(0, params, aux, rho)
    turn = cmath.exp(1j * phi)
    ratio = (math.sin(phi) / sin_psi) ** k * rho**k / (turn**k * math.factorial(k))
    return cmath.exp(shift / turn) * norm * ratio


def _printed_imp3(k, params, aux, rho):
    phi, g = params.phi, aux["gamma"]
    sin_psi, shift, norm = _mp_constants(0, params, aux, rho)
    turn = cmath.exp(1j * phi)
    power = cmath.exp((-g - k) * cmath.log(1 - shift / turn))
    ratio = pochhammer_ratio([g], [1], k, z=rho * math.sin(phi) / (sin_psi * turn))
    return power * norm * ratio


_PRINTED = {
    CorollaryId.IW1: _printed_iw1,
    CorollaryId.IW2: _printed_iw2,
    CorollaryId.ICDH1: _printed_icdh1,
    CorollaryId.ICDH2: _printed_icdh2,
    CorollaryId.ICDH3: _printed_icdh3,
    CorollaryId.ICH1: _printed_ich1,
    CorollaryId.ICH2: _printed_ich2,
    CorollaryId.IMP1: _printed_imp1,
    CorollaryId.IMP2: _printed_imp2,
    CorollaryId.IMP3: _printed_imp3,
}


def printed_rhs(
    corollary: Union[CorollaryId, str],
    k: int,
    params: Optional[FamilyParams],
    aux: dict,
    rho: complex,
) -> complex:
    """Right side in its published closed form, transcription slips included

    projected_rhs is the same quantity rebuilt from the identity's
    coefficients and the norm; the two disagree where the published form
    has a slip.
    """
    corollary = CorollaryId(corollary)
    if not 0 <= k <= K_MAX:
        raise DomainError(f"k={k} outside [0, {K_MAX}]")
    check_hypotheses(_corollary_input(corollary, params, aux, rho))
    return complex(_PRINTED[corollary](k, params, aux, complex(rho)))


def projected_rhs(
    corollary: Union[CorollaryId, str],
    k: int,
    params: Optional[FamilyParams],
    aux: dict,
    rho: complex,
) -> complex:
    """c_k h_k / (k!)^g: the identity's coefficient of P_k / (k!)^g times the norm"""
    corollary = CorollaryId(corollary)
    if not 0 <= k <= K_MAX:
        raise DomainError(f"k={k} outside [0, {K_MAX}]")
    inp = _corollary_input(corollary, params, aux, rho)
    return rhs_coefficient(inp, k) * scaled_norm(k, target_params(inp))


def _projection_integrand(inp: IdentityInput, k: int, target: FamilyParams):
    family = family_of(target)

    def f(x):
        w = weight(family, x, target)
        if w == 0:
            return 0.0
        return lhs(replace(inp, x=x)) * polynomial(k, x, target) * w

    return f


def corollary_sides(
    corollary: Union[CorollaryId, str],
    k: int,
    params: Optional[FamilyParams],
    aux: dict,
    rho: complex,
    quad_tol: float = QUAD_TOL,
    budget: int = BUDGET,
) -> Tuple[QuadResult, complex]:
    """(quadrature of the left side, projected right side)"""
    corollary = CorollaryId(corollary)
    if not 0 <= k <= K_MAX:
        raise DomainError(f"k={k} outside [0, {K_MAX}]")
    inp = _corollary_input(corollary, params, aux, rho)
    check_hypotheses(inp)
    target = target_params(inp)

    quad = integrate(
        _projection_integrand(inp, k, target),
        Domain.of(family_of(target)),
        quad_tol,
        budget,
    )
    return quad, projected_rhs(corollary, k, params, aux, rho)


def _printed_mismatch(record: VerificationRecord, printed: complex, tol: float) -> Optional[str]:
    printed_err = relative_error(record.lhs, printed)
    if printed_err is not None and printed_err <= tol:
        return None
    shown = "not finite" if printed_err is None else f"{printed_err:.3g}"
    return f"printed right side {printed:.10g} differs from the quadrature, rel_err {shown}"


def corollary_check(
    corollary: Union[CorollaryId, str],
    k: int,
    params: Optional[FamilyParams],
    aux: dict,
    rho: complex,
    tol: float = TOL,
    quad_tol: float = QUAD_TOL,
    budget: int = BUDGET,
    trial: int = 0,
) -> VerificationRecord:
    """Integrate the generating function against P_k w and compare with both right sides

    The outcome is judged against projected_rhs. A pass whose quadrature
    misses printed_rhs is a suspected transcription slip in the printed
    form and keeps the passing outcome.

    Raises DomainError when k or the parameters break the hypotheses; a series
    argument outside the 0.95 disk is a skip, numerical trouble a failure.
    """
    started = time.perf_counter()
    corollary = CorollaryId(corollary)
    if not 0 <= k <= K_MAX:
        raise DomainError(f"k={k} outside [0, {K_MAX}]")
    inp = _corollary_input(corollary, params, aux, rho)
    check_hypotheses(inp)

    echo = input_echo(inp)
    echo.pop("x")
    echo["k"] = k
    record = VerificationRecord(RecordKind.COROLLARY, corollary.value, trial, echo)

    reason = skip_reason(inp)
    if reason is not None:
        record.outcome, record.reason = Outcome.SKIP, reason
    else:
        try:
            quad, rhs = corollary_sides(corollary, k, params, aux, rho, quad_tol, budget)
        except BudgetExceeded as e:
            record.outcome, record.reason = Outcome.FAIL, f"BudgetExceeded: {e.msg}"
        except (ArithmeticError, DomainError, NonConvergence) as e:
            record.outcome, record.reason = Outcome.FAIL, f"{type(e).__name__}: {e}"
        else:
            record.lhs, record.rhs = complex(quad.value), rhs
            record.rel_err = relative_error(record.lhs, record.rhs)
            slip = False
            try:
                printed = printed_rhs(corollary, k, params, aux, rho)
            except (ArithmeticError, DomainError, NonConvergence) as e:
                mismatch = f"printed right side not evaluated: {type(e).__name__}: {e}"
            else:
                mismatch = _printed_mismatch(record, printed, tol)
                slip = mismatch is not None
            if record.rel_err is not None and record.rel_err <= tol:
                record.outcome = Outcome.PASS
                record.suspected_typo = slip
                record.reason = mismatch
            else:
                record.outcome = Outcome.FAIL
                record.reason = "relative error above tolerance"
                if mismatch is None:
                    record.reason += "; printed right side agrees with the quadrature"

    record.wall_time_ms = (time.perf_counter() - started) * 1000
    return record


def projection_coherence(
    inp: IdentityInput, k: int, quad_tol: float = QUAD_TOL, budget: int = BUDGET
) -> Tuple[complex, complex]:
    """(integral of F P_k w, right-side coefficient times the quadrature norm)

    Both numbers come from quadrature, so the pair checks the term-by-term
    projection without any closed-form norm.
    """
    check_hypotheses(inp)
    target = target_params(inp)
    family = family_of(target)
    projected = integrate(
        _projection_integrand(inp, k, target), Domain.of(family), quad_tol, budget
    )
    norm = gram(family, k, k, target, quad_tol, budget, scaled=True).value
    expected = rhs_coefficient(inp, k) * norm * math.factorial(k) ** family.growth_order
    return complex(projected.value), complex(expected)


def parseval_check(
    inp: IdentityInput,
    K: int = PARSEVAL_TERMS,
    quad_tol: float = QUAD_TOL,
    budget: int = BUDGET,
) -> Tuple[float, float]:
    """(integral of w |F|^2, sum over k <= K of |c_k|^2 times the scaled Gram entry)

    F is the left side, c_k the right-side coefficients of P_k / (k!)^g.
    Only families with real polynomials qualify.
    """
    check_hypotheses(inp)
    target = target_params(inp)
    family = family_of(target)
    if family is Family.CHAHN:
        raise DomainError("parseval_check needs real-valued polynomials")

    def f(x):
        w = weight(family, x, target)
        if w == 0:
            return 0.0
        return w * abs(lhs(replace(inp, x=x))) ** 2

    energy = integrate(f, Domain.of(family), quad_tol, budget).value
    series = sum(
        abs(rhs_coefficient(inp, k)) ** 2
        * gram(family, k, k, target, quad_tol, budget, scaled=True).value
        for k in range(K + 1)
    )
    return float(energy), float(series)


def corollary_draw(
    corollary: CorollaryId, rng: np.random.Generator, sampling: dict, angle_range: Sequence[float]
) -> IdentityInput:
    """One parameter draw; MP angles come from angle_range so that |rho| = 0.3 is admissible"""
    sampling = {**sampling, "ANGLE_RANGE": list(angle_range)}
    return sample_input(corollary.identity, rng, sampling)


class CorollaryChecker:
    def __init__(self, config: dict, logger: Logger = Logger(__name__)):
        self.config = config["QUADRATURE"]
        self.sampling = config["SAMPLING"]
        self.logger = logger

    def check(
        self,
        corollary: Union[CorollaryId, str],
        k: int,
        params: Optional[FamilyParams],
        aux: dict,
        rho: complex,
        trial: int = 0,
    ) -> VerificationRecord:
        record = corollary_check(
            corollary,
            k,
            params,
            aux,
            rho,
            tol=self.config["TOL"],
            quad_tol=self.config["QUAD_TOL"],
            budget=self.config["BUDGET"],
            trial=trial,
        )
        self.logger.debug(
            f"{record.tag} k={k} rho={rho}: {record.outcome.value} rel_err={record.rel_err}"
        )
        if record.outcome is Outcome.FAIL:
            self.logger.warning(f"{record.tag} trial {trial} failed: {record.reason}")
        elif record.suspected_typo:
            self.logger.info(f"{record.tag} trial {trial} suspected typo: {record.reason}")
        return record

    def run(
        self,
        rng: np.random.Generator,
        corollaries: Optional[Iterable[CorollaryId]] = None,
        draws: int = 1,
    ) -> List[VerificationRecord]:
        corollaries = list(CorollaryId) if corollaries is None else list(corollaries)
        self.logger.info(f"In process: {len(corollaries)} corollaries, {draws} draw(s) each.")

        records = []
        for corollary in corollaries:
            trial = 0
            for _ in range(draws):
                inp = corollary_draw(corollary, rng, self.sampling, self.config["ANGLE_RANGE"])
                for rho in self.config["RHO_VALUES"]:
                    for k in self.config["K_VALUES"]:
                        records.append(self.check(corollary, k, inp.params, inp.aux, rho, trial))
                        trial += 1
            self.logger.info(f"End of processing: {corollary.value}.")

        failed = sum(record.outcome is Outcome.FAIL for record in records)
        self.logger.info(f"Process completed: {len(records)} corollary records, {failed} failed.")
        return records
