import cmath
import math
from enum import Enum
from typing import Sequence, Tuple

from askey.error_handler import DomainError, PoleError

POLE_EPS = 1e-13

# Lanczos approximation, g = 7, nine coefficients
LANCZOS_G = 7
LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
HALF_LOG_TWO_PI = 0.5 * math.log(2 * math.pi)
LOG_PI = math.log(math.pi)


class BoundId(Enum):
    """Pochhammer bounds used to justify reordering double sums

    B1: |(u)_j| >= Re(u) (j-1)!                     (Re u > 0, j >= 1)
    B2: |(v)_n| / n! <= (1+n)^|v|
    B3: |(k+v)_{n-k}| <= (1+n)^|v| n!/k!            (k <= n)
    B4: |(k+v)_n / (k+u)_n| <= max(1/Re u, 1) (1+n)^(1+|v|)   (Re u > 0)
    """

    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"


def is_pole(z: complex, eps: float = POLE_EPS) -> bool:
    z = complex(z)
    nearest = round(z.real)
    return nearest <= 0 and abs(z - nearest) < eps


def _check_pole(z: complex) -> None:
    if is_pole(z):
        raise PoleError(f"gamma pole at z={z}")


def _log_sin_pi(z: complex) -> complex:
    """log sin(pi z) without overflow for large |Im z|"""
    if z.imag < 0:
        return _log_sin_pi(z.conjugate()).conjugate()

    w = cmath.exp(2j * math.pi * z)
    return -1j * math.pi * z + cmath.log(0.5j) + cmath.log(1 - w)


def _lanczos(z: complex) -> complex:
    z -= 1
    series = LANCZOS_COEF[0]
    for i in range(1, len(LANCZOS_COEF)):
        series += LANCZOS_COEF[i] / (z + i)

    t = z + LANCZOS_G + 0.5
    return HALF_LOG_TWO_PI + (z + 0.5) * cmath.log(t) - t + cmath.log(series)


def log_gamma(z: complex) -> complex:
    """Logarithm of the gamma function for complex arguments

    Args:
        z (complex): argument away from 0, -1, -2, ...

    Return:
        complex: log Gamma(z), with exp(log_gamma(z)) == Gamma(z)

    Example:
        >>> log_gamma(4)
        (1.791759469228055+0j)
    """
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        return LOG_PI - _log_sin_pi(z) - _lanczos(1 - z)

    return _lanczos(z)


def gamma(z: complex) -> complex:
    return cmath.exp(log_gamma(z))


def rgamma(z: complex) -> complex:
    """Reciprocal gamma, entire: exactly zero at the poles"""
    z = complex(z)
    if is_pole(z):
        return 0j

    return cmath.exp(-log_gamma(z))


def log_gamma_imag_sq(y: float) -> float:
    """log |Gamma(iy)|^2 = log(pi / (y sinh(pi y)))"""
    u = math.pi * abs(y)
    if u == 0:
        raise PoleError("gamma pole at z=0")

    if u < 20:
        log_sinh = math.log(math.sinh(u))
    else:
        log_sinh = u - math.log(2) + math.log1p(-math.exp(-2 * u))

    return LOG_PI - math.log(abs(y)) - log_sinh


def gamma_imag_sq(y: float) -> float:
    return math.exp(log_gamma_imag_sq(y))


def pochhammer(z: complex, n: int) -> complex:
    """Rising factorial (z)_n = z (z+1) ... (z+n-1)

    Example:
        >>> pochhammer(2 + 1j, 2)
        (5+5j)
    """
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")

    z = complex(z)
    result = 1 + 0j
    for i in range(n):
        result *= z + i

    return result


def pochhammer_ratio(
    numerator: Sequence[complex],
    denominator: Sequence[complex],
    n: int,
    z: complex = 1,
) -> complex:
    """z^n * prod (a)_n / prod (b)_n as one running product

    Factors of comparable growth are paired inside the loop, so the ratio
    stays finite where the individual Pochhammer symbols would overflow.
    """
    if n < 0:
        raise DomainError(f"pochhammer_ratio needs n >= 0, got {n}")

    result = 1 + 0j
    for i in range(n):
        factor = complex(z)
        for a in numerator:
            factor *= a + i
        for b in denominator:
            if b + i == 0:
                raise PoleError(f"vanishing Pochhammer denominator ({b})_{n}")
            factor /= b + i
        result *= factor

    return result


def binomial(n: int, k: int) -> float:
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"binomial needs 0 <= k <= n, got n={n}, k={k}")

    k = min(k, n - k)
    result = 1.0
    for i in range(1, k + 1):
        result = result * (n - k + i) / i

    return result


def bound_margin(
    bound: BoundId,
    u: complex,
    v: complex,
    j: int,
    k: int,
    n: int,
) -> Tuple[float, float]:
    """Both sides of a Pochhammer bound

    B1 holds when lhs >= rhs, B2 to B4 hold when lhs <= rhs.

    Example:
        >>> bound_margin(BoundId.B1, 1, 0, 1, 0, 0)
        (1.0, 1.0)
    """
    u, v = complex(u), complex(v)
    bound = BoundId(bound)

    if bound is BoundId.B1:
        if u.real <= 0 or j < 1:
            raise DomainError("B1 needs Re u > 0 and j >= 1")
        return abs(pochhammer(u, j)), u.real * math.factorial(j - 1)

    if n < 0:
        raise DomainError(f"{bound.value} needs n >= 0")

    if bound is BoundId.B2:
        return abs(pochhammer(v, n)) / math.factorial(n), (1 + n) ** abs(v)

    if bound is BoundId.B3:
        if k < 0 or k > n:
            raise DomainError("B3 needs 0 <= k <= n")
        lhs = abs(pochhammer(k + v, n - k))
        rhs = (1 + n) ** abs(v) * math.factorial(n) / math.factorial(k)
        return lhs, rhs

    if u.real <= 0 or k < 0:
        raise DomainError("B4 needs Re u > 0 and k >= 0")
    lhs = abs(pochhammer_ratio([k + v], [k + u], n))
    rhs = max(1 / u.real, 1.0) * (1 + n) ** (1 + abs(v))
    return lhs, rhs
