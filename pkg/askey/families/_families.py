import cmath
import math

from askey.arith import pochhammer, pochhammer_ratio
from askey.error_handler import DomainError, RealityError
from askey.hypergeom import PfqSpec, pfq_terms, pfq_value

from ._params import (
    CdhParams,
    ChahnParams,
    Family,
    FamilyParams,
    MpParams,
    WilsonParams,
    family_of,
)

N_MAX = 200
REALITY_EPS = 1e-9


def _check_degree(n: int) -> None:
    if not 0 <= n <= N_MAX:
        raise DomainError(f"degree n={n} outside [0, {N_MAX}]")


def _real(value: complex, eps: float = REALITY_EPS) -> float:
    if abs(value.imag) > eps * (1 + abs(value)):
        raise RealityError(
            f"imaginary residue {value.imag:.3e} of a real-valued polynomial"
        )
    return value.real


def _ascending(factors, n: int):
    """Running products prod_{i<k} f(i) for k = 0..n"""
    values = [1 + 0j]
    for i in range(n):
        values.append(values[-1] * factors(i))
    return values


# definitional routes, no parameter validation


def wilson_raw(n: int, x: float, a, b, c, d) -> complex:
    s = a + b + c + d
    prefactor = pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n)
    series = pfq_value(
        [-n, n + s - 1, a + 1j * x, a - 1j * x], [a + b, a + c, a + d], 1
    )
    return prefactor * series


def cdh_raw(n: int, x: float, a, b, c) -> complex:
    prefactor = pochhammer(a + b, n) * pochhammer(a + c, n)
    return prefactor * pfq_value([-n, a + 1j * x, a - 1j * x], [a + b, a + c], 1)


def chahn_raw(n: int, x: float, a, b) -> complex:
    two_re_a = 2 * a.real
    two_re_b = 2 * b.real
    a_bbar = a + b.conjugate()
    prefactor = 1j**n * pochhammer(two_re_a, n) * pochhammer_ratio([a_bbar], [1], n)
    series = pfq_value(
        [-n, n + two_re_a + two_re_b - 1, a + 1j * x], [two_re_a, a_bbar], 1
    )
    return prefactor * series


def mp_raw(n: int, x: float, lam: float, phi: float) -> complex:
    prefactor = pochhammer_ratio([2 * lam], [1], n) * cmath.exp(1j * n * phi)
    series = pfq_value([-n, lam + 1j * x], [2 * lam], 1 - cmath.exp(-2j * phi))
    return prefactor * series


# sum representations, scaled by (n!)^g


def wilson_scaled(n: int, x: float, a, b, c, d) -> complex:
    """W_n(x^2) / (n!)^3 from the u_k(ix) u_{n-k}(-ix) convolution"""
    if x <= 0:
        raise DomainError("the Wilson sum representation needs x > 0")

    y = 1j * x

    def v(arg):
        return _ascending(
            lambda i: (a + arg + i)
            * (b + arg + i)
            * (c + arg + i)
            * (d + arg + i)
            / ((i + 1) ** 3 * (1 + 2 * arg + i)),
            n,
        )

    forward, backward = v(y), v(-y)
    total = 0j
    weight = 1.0
    for k in range(n + 1):
        total += forward[k] * backward[n - k] * weight * (2 * y - n + 2 * k) / (2 * y)
        if k < n:
            weight *= ((k + 1) / (n - k)) ** 2
    return total


def cdh_scaled(n: int, x: float, a, b, c) -> complex:
    """S_n(x^2) / (n!)^2"""
    y = 1j * x
    alpha = _ascending(lambda i: (a + y + i) * (b + y + i) / ((a + b + i) * (i + 1)), n)
    beta = _ascending(lambda i: (c - y + i) / (i + 1), n)
    total = sum(alpha[k] * beta[n - k] for k in range(n + 1))
    return pochhammer_ratio([a + b], [1], n) * total


def chahn_scaled(n: int, x: float, a, b) -> complex:
    """p_n(x) / n! from the alternating convolution"""
    y = 1j * x
    a_bar, b_bar = a.conjugate(), b.conjugate()
    forward = _ascending(lambda i: (a + y + i) * (b + y + i) / (i + 1) ** 2, n)
    backward = _ascending(lambda i: (a_bar - y + i) * (b_bar - y + i) / (i + 1) ** 2, n)
    total = 0j
    weight = 1.0
    for k in range(n + 1):
        total += (-1) ** k * forward[k] * backward[n - k] * weight
        if k < n:
            weight *= (k + 1) / (n - k)
    return 1j**n * total


def mp_scaled(n: int, x: float, lam: float, phi: float) -> complex:
    y = 1j * x
    minus = _ascending(lambda i: (lam - y + i) / (i + 1), n)
    plus = _ascending(lambda i: (lam + y + i) / (i + 1), n)
    return sum(
        minus[k] * plus[n - k] * cmath.exp(1j * phi * (2 * k - n)) for k in range(n + 1)
    )


# public evaluators


def wilson(n: int, x: float, p: WilsonParams) -> float:
    """Wilson polynomial W_n(x^2; a, b, c, d) by its terminating 4F3

    Example:
        >>> wilson(1, 1.0, WilsonParams(1, 1, 1, 1))
        0.0
    """
    _check_degree(n)
    if x < 0:
        raise DomainError("Wilson polynomials take x >= 0")
    return _real(wilson_raw(n, x, *p.as_tuple()))


def wilson_sumrep(n: int, x: float, p: WilsonParams) -> float:
    _check_degree(n)
    return _real(wilson_scaled(n, x, *p.as_tuple()) * math.factorial(n) ** 3)


def cdh(n: int, x: float, p: CdhParams) -> float:
    _check_degree(n)
    if x < 0:
        raise DomainError("continuous dual Hahn polynomials take x >= 0")
    return _real(cdh_raw(n, x, *p.as_tuple()))


def cdh_sumrep(n: int, x: float, p: CdhParams) -> float:
    _check_degree(n)
    return _real(cdh_scaled(n, x, *p.as_tuple()) * math.factorial(n) ** 2)


def chahn(n: int, x: float, p: ChahnParams) -> complex:
    _check_degree(n)
    return chahn_raw(n, x, *p.as_tuple())


def chahn_sumrep(n: int, x: float, p: ChahnParams) -> complex:
    _check_degree(n)
    return chahn_scaled(n, x, *p.as_tuple()) * math.factorial(n)


def mp(n: int, x: float, p: MpParams) -> float:
    _check_degree(n)
    return _real(mp_raw(n, x, p.lam, p.phi))


def mp_sumrep(n: int, x: float, p: MpParams) -> float:
    _check_degree(n)
    return _real(mp_scaled(n, x, p.lam, p.phi))


_DEFINITION = {
    Family.WILSON: wilson,
    Family.CDH: cdh,
    Family.CHAHN: chahn,
    Family.MP: mp,
}


def evaluate(n: int, x: float, params: FamilyParams) -> complex:
    """Polynomial value through the definition, as a complex number"""
    return complex(_DEFINITION[family_of(params)](n, x, params))


def scaled_value(n: int, x: float, params: FamilyParams) -> complex:
    """P_n(x) / (n!)^g through the sum representation

    The result stays of polynomial size in n, so truncated generating
    function sums can run to thousands of terms without overflow.
    """
    family = family_of(params)
    if family is Family.WILSON:
        if x > 0:
            return wilson_scaled(n, x, *params.as_tuple())
        return wilson_raw(n, x, *params.as_tuple()) / math.factorial(n) ** 3
    if family is Family.CDH:
        return cdh_scaled(n, x, *params.as_tuple())
    if family is Family.CHAHN:
        return chahn_scaled(n, x, *params.as_tuple())
    return mp_scaled(n, x, params.lam, params.phi)


def condition_scale(n: int, x: float, params: FamilyParams) -> float:
    """|prefactor| times the sum of |terms| of the defining series, at least 1

    Rounding in the definitional route is a small multiple of machine
    epsilon times this scale, which makes it the yardstick for comparing
    two evaluations of the same polynomial.
    """
    family = family_of(params)
    if family is Family.WILSON:
        a, b, c, d = params.as_tuple()
        numerator = [-n, n + params.total - 1, a + 1j * x, a - 1j * x]
        denominator = [a + b, a + c, a + d]
        prefactor = pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n)
        argument = 1
    elif family is Family.CDH:
        a, b, c = params.as_tuple()
        numerator, denominator = [-n, a + 1j * x, a - 1j * x], [a + b, a + c]
        prefactor = pochhammer(a + b, n) * pochhammer(a + c, n)
        argument = 1
    elif family is Family.CHAHN:
        a, b = params.as_tuple()
        two_re_a, two_re_b = 2 * a.real, 2 * b.real
        a_bbar = a + b.conjugate()
        numerator = [-n, n + two_re_a + two_re_b - 1, a + 1j * x]
        denominator = [two_re_a, a_bbar]
        prefactor = pochhammer(two_re_a, n) * pochhammer_ratio([a_bbar], [1], n)
        argument = 1
    else:
        numerator, denominator = [-n, params.lam + 1j * x], [2 * params.lam]
        prefactor = pochhammer_ratio([2 * params.lam], [1], n)
        argument = 1 - cmath.exp(-2j * params.phi)

    terms = pfq_terms(PfqSpec(tuple(numerator), tuple(denominator), argument))
    return max(1.0, abs(prefactor) * sum(abs(t) for t in terms))


def scaled_sequence(n_max: int, x: float, params: FamilyParams):
    """[P_n(x) / (n!)^g for n = 0..n_max]"""
    return [scaled_value(n, x, params) for n in range(n_max + 1)]
