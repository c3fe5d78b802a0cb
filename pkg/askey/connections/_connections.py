import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from askey.arith import binomial, pochhammer, pochhammer_ratio
from askey.error_handler import DomainError
from askey.families import (
    CdhParams,
    ChahnParams,
    Family,
    FamilyParams,
    MpParams,
    WilsonParams,
    evaluate,
    family_of,
)
from askey.hypergeom import chu_vandermonde, pfq_value, whipple_sum

IMAG_EPS = 1e-12


@dataclass(frozen=True)
class ConnectionCoeff:
    """a_{n,k} in P_n(x; source) = sum_k a_{n,k} P_k(x; target)"""

    n: int
    k: int
    value: complex

    def __post_init__(self):
        if not 0 <= self.k <= self.n:
            raise DomainError(f"connection index k={self.k} outside [0, n={self.n}]")
        object.__setattr__(self, "value", complex(self.value))


def _check_indices(n: int, k: int) -> None:
    if not 0 <= k <= n:
        raise DomainError(f"connection index k={k} outside [0, n={n}]")


def _unit_sum(numerator: Sequence[complex], denominator: Sequence[complex]) -> complex:
    """Terminating pFq at z = 1, led by the terminating parameter

    Equal numerator/denominator pairs are cancelled first; a sum that
    collapses to 2F1(-m, b; c; 1) is closed by Chu-Vandermonde.
    """
    head, rest = numerator[0], list(numerator[1:])
    denominator = list(denominator)
    for a in list(rest):
        if a in denominator:
            rest.remove(a)
            denominator.remove(a)

    m = -round(complex(head).real)
    if not rest and not denominator:
        return 1 + 0j if m == 0 else 0j
    if len(rest) == 1 and len(denominator) == 1:
        return chu_vandermonde(m, rest[0], denominator[0])
    return pfq_value([head, *rest], denominator, 1)


def wilson_connect_1p(n: int, k: int, p: WilsonParams, h: complex) -> ConnectionCoeff:
    """Wilson connection coefficient with the fourth parameter d -> h free

    W_n(x^2; a, b, c, d) = sum_k a_{n,k} W_k(x^2; a, b, c, h)

    Example:
        >>> wilson_connect_1p(3, 3, WilsonParams(1, 1, 1, 1), 1).value
        (1+0j)
    """
    _check_indices(n, k)
    a, b, c, d = p.as_tuple()
    s = p.total
    m = n - k
    value = (
        binomial(n, k)
        * pochhammer(d - h, m)
        * pochhammer(k + a + b, m)
        * pochhammer(k + a + c, m)
        * pochhammer(k + b + c, m)
        * pochhammer_ratio([n + s - 1], [k + a + b + c + h - 1], k)
        * pochhammer_ratio([], [2 * k + a + b + c + h], m)
    )
    return ConnectionCoeff(n, k, value)


def wilson_connect_3p(
    n: int, k: int, p: WilsonParams, f: complex, g: complex, h: complex
) -> ConnectionCoeff:
    """Wilson connection coefficient onto W_k(x^2; a, f, g, h)

    Binomial times a Pochhammer quotient times a terminating 5F4 at unit
    argument.
    """
    _check_indices(n, k)
    a, b, c, d = p.as_tuple()
    s = p.total
    m = n - k
    prefactor = (
        binomial(n, k)
        * pochhammer(k + a + b, m)
        * pochhammer(k + a + c, m)
        * pochhammer(k + a + d, m)
        * pochhammer_ratio([n + s - 1], [k + a + f + g + h - 1], k)
    )
    series = _unit_sum(
        [k - n, k + n + s - 1, k + a + f, k + a + g, k + a + h],
        [2 * k + a + f + g + h, k + a + b, k + a + c, k + a + d],
    )
    return ConnectionCoeff(n, k, prefactor * series)


def wilson_intermediate(n: int, k: int, p: WilsonParams, f: complex, g: complex) -> ConnectionCoeff:
    """Three-parameter coefficient with h held at d"""
    return wilson_connect_3p(n, k, p, f, g, p.d)


def cdh_connect_2p(n: int, k: int, p: CdhParams, f: complex, g: complex) -> ConnectionCoeff:
    """S_n(x^2; a, b, c) = sum_k a_{n,k} S_k(x^2; a, f, g)"""
    _check_indices(n, k)
    a, b, c = p.as_tuple()
    m = n - k
    value = (
        binomial(n, k)
        * pochhammer(k + a + b, m)
        * pochhammer(k + a + c, m)
        * _unit_sum([k - n, k + a + f, k + a + g], [k + a + b, k + a + c])
    )
    return ConnectionCoeff(n, k, value)


def cdh_connect_1p(n: int, k: int, p: CdhParams, d: complex) -> ConnectionCoeff:
    """S_n(x^2; a, b, c) = sum_k a_{n,k} S_k(x^2; a, b, d)

    Example:
        >>> cdh_connect_1p(4, 4, CdhParams(1, 2, 3), 0.5).value
        (1+0j)
    """
    _check_indices(n, k)
    a, b, c = p.as_tuple()
    m = n - k
    value = binomial(n, k) * pochhammer(k + a + b, m) * pochhammer(c - d, m)
    return ConnectionCoeff(n, k, value)


def cdh_limit_residual(
    n: int, k: int, p: CdhParams, f: complex, g: complex, d: float
) -> float:
    """|Wilson coefficient onto (a, f, g, d), scaled by (a+d)_k/(a+d)_n, - CDH coefficient|

    The Wilson source is (a, b, c, d); as d grows the scaled coefficient
    tends to cdh_connect_2p(n, k, p, f, g) at rate 1/d.
    """
    _check_indices(n, k)
    a, b, c = p.as_tuple()
    s = a + b + c + d
    m = n - k
    # the (k+a+d)_{n-k} factor cancels against the scaling
    scaled = (
        binomial(n, k)
        * pochhammer(k + a + b, m)
        * pochhammer(k + a + c, m)
        * pochhammer_ratio([n + s - 1], [k + a + f + g + d - 1], k)
        * _unit_sum(
            [k - n, k + n + s - 1, k + a + f, k + a + g],
            [2 * k + a + f + g + d, k + a + b, k + a + c],
        )
    )
    return abs(scaled - cdh_connect_2p(n, k, p, f, g).value)


def _check_shift(p: ChahnParams, c: complex) -> None:
    c = complex(c)
    if abs(p.a.imag - p.b.imag) > IMAG_EPS or abs(p.a.imag - c.imag) > IMAG_EPS:
        raise DomainError(
            f"the Whipple reduction needs Im a = Im b = Im c, got {p.a}, {p.b}, {c}"
        )


def _chahn_reduced(n: int, k: int, p: ChahnParams, c: complex) -> complex:
    # a common imaginary part only shifts x, so the real parts carry everything
    if (n - k) % 2:
        return 0j
    half = (n - k) // 2
    ra, rb, rc = p.a.real, p.b.real, complex(c).real
    m = n - k
    return (
        (-1) ** half
        * pochhammer(k + 2 * ra, m)
        * pochhammer(k + ra + rb, m)
        * pochhammer_ratio([n + 2 * ra + 2 * rb - 1], [k + 2 * ra + 2 * rc - 1], k)
        * pochhammer_ratio([rb - rc], [1, k + ra + rc + 0.5, ra + rb + k], half, z=0.25)
    )


def _chahn_unreduced(n: int, k: int, p: ChahnParams, c: complex) -> complex:
    a, b = p.as_tuple()
    c = complex(c)
    ra, rb, rc = a.real, b.real, c.real
    a_bbar, a_cbar = a + b.conjugate(), a + c.conjugate()
    m = n - k
    prefactor = (
        1j**m
        * pochhammer(k + 2 * ra, m)
        * pochhammer_ratio([a_bbar + k], [1], m)
        * pochhammer_ratio([n + 2 * ra + 2 * rb - 1], [k + 2 * ra + 2 * rc - 1], k)
    )
    series = _unit_sum(
        [k - n, k + n + 2 * ra + 2 * rb - 1, k + a_cbar],
        [2 * k + 2 * ra + 2 * rc, k + a_bbar],
    )
    return prefactor * series


def chahn_connect(
    n: int, k: int, p: ChahnParams, c: complex, reduced: bool = True
) -> ConnectionCoeff:
    """Continuous Hahn coefficient onto p_k(x; a, c, conj(a), conj(c))

    With reduced=True (Im a = Im b = Im c) the unit-argument 3F2 is closed
    by Whipple's sum: zero for odd n - k and a Pochhammer quotient for
    n - k = 2p. reduced=False sums the 3F2 directly and accepts any c with
    positive real part.
    """
    _check_indices(n, k)
    if complex(c).real <= 0:
        raise DomainError(f"c={c} needs a positive real part")
    if reduced:
        _check_shift(p, c)
        return ConnectionCoeff(n, k, _chahn_reduced(n, k, p, c))
    return ConnectionCoeff(n, k, _chahn_unreduced(n, k, p, c))


def chahn_whipple_factor(n: int, k: int, p: ChahnParams, c: complex) -> Tuple[complex, complex]:
    """The 3F2 of the unreduced coefficient, summed directly and by Whipple's sum"""
    _check_indices(n, k)
    _check_shift(p, c)
    ra, rb, rc = p.a.real, p.b.real, complex(c).real
    numerator = [k - n, k + n + 2 * ra + 2 * rb - 1, k + ra + rc]
    direct = pfq_value(numerator, [2 * k + 2 * ra + 2 * rc, k + ra + rb], 1)
    return direct, whipple_sum(*numerator)


def mp_connect(n: int, k: int, p: MpParams, psi: float) -> ConnectionCoeff:
    """P_n(x; lam, phi) = sum_k a_{n,k} P_k(x; lam, psi)

    Example:
        >>> abs(mp_connect(2, 2, MpParams(1, 1.0), 1.0).value - 1) < 1e-15
        True
    """
    _check_indices(n, k)
    if not 0 < psi < math.pi:
        raise DomainError(f"psi={psi} must lie in (0, pi)")
    lam, phi = p.as_tuple()
    m = n - k
    value = (
        pochhammer_ratio([2 * lam + k], [1], m, z=math.sin(psi - phi) / math.sin(psi))
        * (math.sin(phi) / math.sin(psi)) ** k
    )
    return ConnectionCoeff(n, k, value)


def connection_coefficient(n: int, k: int, source: FamilyParams, target: FamilyParams) -> ConnectionCoeff:
    """Coefficient of P_k(x; target) in P_n(x; source), within one family"""
    family = family_of(source)
    if family_of(target) is not family:
        raise DomainError("connection coefficients stay within one family")

    if family is Family.WILSON:
        if target.a != source.a:
            raise DomainError("Wilson connections keep the parameter a")
        if (target.b, target.c) == (source.b, source.c):
            return wilson_connect_1p(n, k, source, target.d)
        return wilson_connect_3p(n, k, source, target.b, target.c, target.d)

    if family is Family.CDH:
        if target.a != source.a:
            raise DomainError("continuous dual Hahn connections keep the parameter a")
        if target.b == source.b:
            return cdh_connect_1p(n, k, source, target.c)
        return cdh_connect_2p(n, k, source, target.b, target.c)

    if family is Family.CHAHN:
        if target.a != source.a:
            raise DomainError("continuous Hahn connections keep the parameter a")
        shifted = abs(source.a.imag - source.b.imag) <= IMAG_EPS and abs(
            source.a.imag - target.b.imag
        ) <= IMAG_EPS
        return chahn_connect(n, k, source, target.b, reduced=shifted)

    if target.lam != source.lam:
        raise DomainError("Meixner-Pollaczek connections keep lambda")
    return mp_connect(n, k, source, target.phi)


def expand(
    family: Family, n: int, source: FamilyParams, target: FamilyParams, x: float
) -> Tuple[complex, complex]:
    """Source polynomial at x and its re-expansion in the target basis

    Return:
        (lhs, rhs) with lhs = P_n(x; source), rhs = sum_k a_{n,k} P_k(x; target)
    """
    family = Family(family)
    if family_of(source) is not family:
        raise DomainError(f"source parameters do not belong to {family.value}")

    lhs = evaluate(n, x, source)
    rhs = sum(
        connection_coefficient(n, k, source, target).value * evaluate(k, x, target)
        for k in range(n + 1)
    )
    return lhs, complex(rhs)


def connection_matrix(
    family: Family, n_max: int, source: FamilyParams, target: FamilyParams
) -> np.ndarray:
    """Lower-triangular matrix of a_{n,k}, n, k = 0..n_max, filled row by row"""
    family = Family(family)
    if family_of(source) is not family:
        raise DomainError(f"source parameters do not belong to {family.value}")

    matrix = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for n in range(n_max + 1):
        row: List[complex] = [
            connection_coefficient(n, k, source, target).value for k in range(n + 1)
        ]
        matrix[n, : n + 1] = row
    return matrix
