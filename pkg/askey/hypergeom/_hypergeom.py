import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from askey.arith import is_pole, pochhammer_ratio, rgamma, gamma
from askey.error_handler import DomainError, PoleError

DEFAULT_TOL = 1e-15
MAX_TERMS = 100_000
DISK_LIMIT = 0.95
SMALL_TERMS_TO_STOP = 3
TERMINATION_EPS = 1e-13


@dataclass(frozen=True)
class PfqSpec:
    """Parameters of pFq(a_1..a_p; b_1..b_q; z)"""

    numerator: Tuple[complex, ...]
    denominator: Tuple[complex, ...]
    argument: complex

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(a) for a in self.numerator))
        object.__setattr__(
            self, "denominator", tuple(complex(b) for b in self.denominator)
        )
        object.__setattr__(self, "argument", complex(self.argument))


@dataclass
class SeriesValue:
    value: complex
    abs_err_est: float
    terms_used: int
    converged: bool


def _non_positive_integer(a: complex) -> Optional[int]:
    """m when a lies within TERMINATION_EPS of -m, m = 0, 1, 2, ..."""
    nearest = round(a.real)
    if nearest <= 0 and abs(a - nearest) < TERMINATION_EPS:
        return -nearest
    return None


def _cancel_pairs(
    numerator: Sequence[complex], denominator: Sequence[complex]
) -> Tuple[List[complex], List[complex]]:
    numerator, denominator = list(numerator), list(denominator)
    for a in list(numerator):
        if _non_positive_integer(a) is not None:
            continue
        if a in denominator:
            numerator.remove(a)
            denominator.remove(a)
    return numerator, denominator


def _terminating_degree(numerator: Sequence[complex]) -> Optional[int]:
    degrees = [m for m in map(_non_positive_integer, numerator) if m is not None]
    return min(degrees) if degrees else None


def _prepare(spec: PfqSpec) -> Tuple[List[complex], List[complex], Optional[int]]:
    numerator, denominator = _cancel_pairs(spec.numerator, spec.denominator)
    degree = _terminating_degree(numerator)

    for b in denominator:
        m = _non_positive_integer(b)
        if m is None:
            continue
        if degree is None or degree > m:
            raise DomainError(
                f"denominator parameter {b} is a non-positive integer "
                "and the series does not terminate before it"
            )

    return numerator, denominator, degree


def _ratio(numerator, denominator, z, k) -> complex:
    factor = z / (k + 1)
    for a in numerator:
        factor *= a + k
    for b in denominator:
        factor /= b + k
    return factor


def pfq_terms(spec: PfqSpec) -> Iterator[complex]:
    """Yield the terms of the series; finite when the series terminates"""
    numerator, denominator, degree = _prepare(spec)
    z = spec.argument
    term = 1 + 0j
    k = 0
    yield term
    while degree is None or k < degree:
        term *= _ratio(numerator, denominator, z, k)
        k += 1
        yield term


def pfq(spec: PfqSpec, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS) -> SeriesValue:
    """Generalized hypergeometric series

    A terminating series (a numerator parameter at -n) is summed exactly.
    Otherwise partial sums run until three consecutive tail estimates fall
    below tol * max(1, |partial sum|). For p = q + 1 the tail estimate is the
    geometric bound |t_k| q / (1 - q), q = max(|z|, |t_k / t_{k-1}|).

    Args:
        spec (PfqSpec): parameters and argument
        tol (float): relative tolerance of the stopping rule
        max_terms (int): term cap, beyond which converged is False

    Return:
        SeriesValue

    Example:
        >>> pfq(PfqSpec((-2, 1), (3,), 1)).value
        (0.5+0j)
    """
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")

    numerator, denominator, degree = _prepare(spec)
    z = spec.argument
    p, q = len(numerator), len(denominator)

    if z == 0 or degree == 0:
        return SeriesValue(1 + 0j, 0.0, 1, True)

    if degree is not None:
        total = term = 1 + 0j
        for k in range(degree):
            term *= _ratio(numerator, denominator, z, k)
            total += term
        return SeriesValue(total, 0.0, degree + 1, True)

    if p > q + 1:
        raise DomainError(f"{p}F{q} diverges for z != 0")
    if p == q + 1 and abs(z) > DISK_LIMIT:
        raise DomainError(f"{p}F{q} needs |z| <= {DISK_LIMIT}, got |z|={abs(z):.4g}")

    total = term = 1 + 0j
    small = 0
    estimate = math.inf
    for k in range(max_terms - 1):
        factor = _ratio(numerator, denominator, z, k)
        term *= factor
        total += term

        if p == q + 1:
            ratio = max(abs(z), abs(factor))
            estimate = abs(term) * ratio / (1 - ratio) if ratio < 1 else math.inf
        else:
            estimate = abs(term)

        if estimate <= tol * max(1.0, abs(total)):
            small += 1
            if small >= SMALL_TERMS_TO_STOP:
                return SeriesValue(total, estimate, k + 2, True)
        else:
            small = 0

    return SeriesValue(total, estimate, max_terms, False)


def pfq_value(
    numerator: Sequence[complex],
    denominator: Sequence[complex],
    argument: complex,
    tol: float = DEFAULT_TOL,
) -> complex:
    """Shorthand returning only the value of a converged series"""
    return pfq(PfqSpec(tuple(numerator), tuple(denominator), argument), tol).value


def chu_vandermonde(n: int, b: complex, c: complex) -> complex:
    """2F1(-n, b; c; 1) = (c - b)_n / (c)_n

    Example:
        >>> chu_vandermonde(2, 1, 3)
        (0.5+0j)
    """
    b, c = complex(b), complex(c)
    for i in range(n):
        if c + i == 0:
            raise DomainError(f"(c)_n vanishes for c={c}, n={n}")

    # c - b on one of 0, -1, ..., 1 - n up to rounding: the sum is exactly 0
    m = _non_positive_integer(c - b)
    if m is not None and m < n:
        return 0j

    return pochhammer_ratio([c - b], [c], n)


def saalschutz_sum(m: int, a: complex, b: complex, c: complex) -> complex:
    """Balanced 3F2(-m, a, b; c, 1 + a + b - c - m; 1)"""
    a, b, c = complex(a), complex(b), complex(c)
    return pochhammer_ratio([c - a, c - b], [c, c - a - b], m)


def whipple_sum(ap: complex, bp: complex, cp: complex) -> complex:
    """3F2(a', b', c'; (a' + b' + 1)/2, 2c'; 1) as a gamma quotient

    A terminating a' = -m gives 0 for odd m and, for m = 2p, the finite
    Pochhammer limit of the quotient.
    """
    ap, bp, cp = complex(ap), complex(bp), complex(cp)
    if _non_positive_integer(ap) is None and _non_positive_integer(bp) is not None:
        ap, bp = bp, ap

    m = _non_positive_integer(ap)
    if m is not None:
        if m % 2:
            return 0j
        half = m // 2
        return pochhammer_ratio(
            [0.5 - half, cp + (1 - bp) / 2],
            [cp + 0.5, (bp + 1) / 2 - half],
            half,
        )

    upper = (cp + 0.5, (ap + bp + 1) / 2, cp + (1 - ap - bp) / 2)
    for z in upper:
        if is_pole(z):
            raise PoleError(f"Whipple quotient has a numerator pole at {z}")

    value = math.sqrt(math.pi) * gamma(upper[0]) * gamma(upper[1]) * gamma(upper[2])
    for z in ((ap + 1) / 2, (bp + 1) / 2, cp + (1 - ap) / 2, cp + (1 - bp) / 2):
        value *= rgamma(z)

    return value
