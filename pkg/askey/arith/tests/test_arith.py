import os
import sys
import math
import cmath
import pytest
import numpy as np
from hypothesis import given, settings, strategies as st
from scipy import special

TEST_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(os.path.dirname(os.path.dirname(TEST_DIR)))
sys.path.append(ROOT_DIR)

from askey.arith import (
    BoundId,
    binomial,
    bound_margin,
    gamma,
    gamma_imag_sq,
    log_gamma,
    pochhammer,
    pochhammer_ratio,
    rgamma,
)
from askey.error_handler import DomainError, PoleError

re_part = st.floats(min_value=0.1, max_value=8.0)
im_part = st.floats(min_value=-8.0, max_value=8.0)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.mark.parametrize(
    "z, expected",
    [(1, 0.0), (4, math.log(6)), (0.5, 0.5 * math.log(math.pi))],
)
def test_log_gamma_examples(z, expected):
    assert abs(log_gamma(z) - expected) < 1e-13


@pytest.mark.parametrize("n", range(1, 20))
def test_gamma_factorials(n):
    assert rel(gamma(n), math.factorial(n - 1)) < 1e-13


def test_gamma_imaginary_unit():
    value = abs(gamma(1j)) ** 2
    assert abs(value - math.pi / math.sinh(math.pi)) < 1e-13
    assert abs(gamma_imag_sq(1.0) - 0.2719853150) < 1e-10


def test_gamma_imag_sq_large_argument():
    # pi / (y sinh(pi y)) underflows gracefully rather than overflowing
    assert 0.0 <= gamma_imag_sq(300.0) < 1e-300
    assert gamma_imag_sq(40.0) > 0


def test_gamma_reflection_negative_real():
    assert rel(gamma(-0.5), -2 * math.sqrt(math.pi)) < 1e-13
    assert rel(gamma(-2.5), special.gamma(-2.5)) < 1e-12


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-15])
def test_gamma_pole(z):
    with pytest.raises(PoleError):
        gamma(z)
    assert rgamma(z) == 0


@pytest.mark.parametrize(
    "z",
    [0.3 + 4j, 2.5 - 7j, 0.1 + 0.1j, -1.7 + 3j, -4.2 - 0.5j, 12 + 30j, 0.2 - 40j],
)
def test_log_gamma_against_scipy(z):
    ours = cmath.exp(log_gamma(z))
    theirs = cmath.exp(special.loggamma(z))
    assert rel(ours, theirs) < 1e-12


@settings(max_examples=200, deadline=None)
@given(re_part, im_part)
def test_gamma_recurrence(x, y):
    z = complex(x, y)
    assert rel(gamma(z + 1), z * gamma(z)) < 1e-12


def test_pochhammer_examples():
    assert pochhammer(3 + 2j, 0) == 1
    assert pochhammer(1, 5) == 120
    assert pochhammer(2 + 1j, 2) == 5 + 5j
    with pytest.raises(DomainError):
        pochhammer(1, -1)


@settings(max_examples=200, deadline=None)
@given(re_part, im_part, st.integers(0, 30), st.integers(0, 30))
def test_pochhammer_split(x, y, m, n):
    z = complex(x, y)
    whole = pochhammer(z, m + n)
    assert rel(whole, pochhammer(z, m) * pochhammer(z + m, n)) < 1e-12


@settings(max_examples=100, deadline=None)
@given(re_part, st.floats(min_value=-3.0, max_value=3.0), st.integers(0, 30))
def test_pochhammer_gamma_ratio(x, y, n):
    z = complex(x, y)
    assert rel(pochhammer(z, n) * gamma(z), gamma(z + n)) < 1e-11


def test_pochhammer_ratio_avoids_overflow():
    # (1)_400 alone overflows a double
    value = pochhammer_ratio([1.0], [2.0], 400)
    assert abs(value - 1 / 401) < 1e-15
    with pytest.raises(PoleError):
        pochhammer_ratio([1.0], [-2.0], 4)


@pytest.mark.parametrize(
    "n, k, expected", [(7, 0, 1), (5, 2, 10), (20, 10, 184756), (50, 25, math.comb(50, 25))]
)
def test_binomial(n, k, expected):
    assert binomial(n, k) == pytest.approx(expected, rel=1e-15)


def test_binomial_domain():
    with pytest.raises(DomainError):
        binomial(3, 4)


def test_bound_margin_examples():
    assert bound_margin(BoundId.B1, 1, 0, 1, 0, 0) == (1.0, 1.0)
    lhs, rhs = bound_margin(BoundId.B2, 0, 0, 0, 0, 5)
    assert lhs == 0 and rhs == 1
    lhs, rhs = bound_margin(BoundId.B4, 1.5 + 0.5j, 1.5 + 0.5j, 0, 3, 12)
    assert abs(lhs - 1) < 1e-14 and lhs <= rhs


def test_bound_margin_side_conditions():
    with pytest.raises(DomainError):
        bound_margin(BoundId.B1, -1, 0, 1, 0, 0)
    with pytest.raises(DomainError):
        bound_margin(BoundId.B3, 1, 1, 0, 6, 5)
    with pytest.raises(DomainError):
        bound_margin(BoundId.B4, 0, 1, 0, 0, 5)


def test_bounds_hold_on_random_draws():
    rng = np.random.default_rng(2024)
    for _ in range(2000):
        u = complex(rng.uniform(1e-3, 5), rng.uniform(-5, 5))
        radius, angle = rng.uniform(0, 5), rng.uniform(0, 2 * np.pi)
        v = radius * complex(np.cos(angle), np.sin(angle))
        n = int(rng.integers(0, 51))
        k = int(rng.integers(0, n + 1))
        j = int(rng.integers(1, 51))

        lhs, rhs = bound_margin(BoundId.B1, u, v, j, k, n)
        assert lhs >= rhs * (1 - 1e-12)
        for bound in (BoundId.B2, BoundId.B3, BoundId.B4):
            lhs, rhs = bound_margin(bound, u, v, j, k, n)
            assert lhs <= rhs * (1 + 1e-12)
