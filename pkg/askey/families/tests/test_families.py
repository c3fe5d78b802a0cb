import os
import sys
import math
import itertools
import pytest
import numpy as np

TEST_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(os.path.dirname(os.path.dirname(TEST_DIR)))
sys.path.append(ROOT_DIR)

from askey.arith import pochhammer
from askey.error_handler import DomainError, RealityError
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
    condition_scale,
    chahn_sumrep,
    evaluate,
    family_of,
    growth_bound_check,
    limit_residual,
    mp,
    mp_sumrep,
    scaled_value,
    wilson,
    wilson_sumrep,
)
from askey.families._families import _real


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(11)


def positive(rng):
    return float(rng.uniform(0.1, 3))


def random_wilson(rng):
    if rng.uniform() < 0.5:
        a = complex(positive(rng), rng.uniform(-2, 2))
        return WilsonParams(a, a.conjugate(), positive(rng), positive(rng))
    return WilsonParams(*(positive(rng) for _ in range(4)))


def random_cdh(rng):
    if rng.uniform() < 0.5:
        b = complex(positive(rng), rng.uniform(-2, 2))
        return CdhParams(positive(rng), b, b.conjugate())
    return CdhParams(*(positive(rng) for _ in range(3)))


def random_chahn(rng):
    return ChahnParams(
        complex(positive(rng), rng.uniform(-2, 2)),
        complex(positive(rng), rng.uniform(-2, 2)),
    )


def random_mp(rng):
    return MpParams(positive(rng), rng.uniform(0.2, math.pi - 0.2))


def test_degree_zero_is_one(rng):
    for _ in range(5):
        x = rng.uniform(0.1, 5)
        assert wilson(0, x, random_wilson(rng)) == 1
        assert cdh(0, x, random_cdh(rng)) == 1
        assert chahn(0, x, random_chahn(rng)) == 1
        assert mp(0, x, random_mp(rng)) == 1
        assert wilson_sumrep(0, x, random_wilson(rng)) == 1
        assert cdh_sumrep(0, x, random_cdh(rng)) == 1
        assert chahn_sumrep(0, x, random_chahn(rng)) == 1
        assert mp_sumrep(0, x, random_mp(rng)) == 1


def test_wilson_degree_one():
    a, b, c, d = 0.7 + 0.4j, 0.7 - 0.4j, 1.3, 2.1
    x = 0.9
    expected = (a + b) * (a + c) * (a + d) - (a + b + c + d) * (a * a + x * x)
    value = wilson(1, x, WilsonParams(a, b, c, d))
    assert abs(value - expected.real) < 1e-12 * abs(expected)
    assert abs(expected.imag) < 1e-12


def test_wilson_vanishing_example():
    p = WilsonParams(1, 1, 1, 1)
    assert wilson(1, 1.0, p) == 0
    assert abs(wilson_sumrep(1, 1.0, p)) < 1e-13


def test_cdh_degree_one():
    assert abs(cdh(1, 0.0, CdhParams(1, 1, 1)) - 3) < 1e-14
    assert abs(cdh_sumrep(1, 0.0, CdhParams(1, 1, 1)) - 3) < 1e-14
    a, b, c, x = 0.4, 1.2, 2.5, 1.7
    expected = (a + b) * (a + c) - (a * a + x * x)
    assert abs(cdh(1, x, CdhParams(a, b, c)) - expected) < 1e-13


def test_chahn_degree_one():
    a, b, x = 0.8 + 0.5j, 1.4 - 1.1j, -0.6
    expected = 1j * (
        2 * a.real * (a + b.conjugate()) - (2 * a.real + 2 * b.real) * (a + 1j * x)
    )
    p = ChahnParams(a, b)
    assert abs(chahn(1, x, p) - expected) < 1e-13
    assert abs(chahn_sumrep(1, x, p) - expected) < 1e-13


def test_mp_degree_one():
    lam, phi, x = 1.3, 0.9, -2.2
    expected = 2 * (lam * math.cos(phi) + x * math.sin(phi))
    assert abs(mp(1, x, MpParams(lam, phi)) - expected) < 1e-13
    assert abs(mp_sumrep(1, x, MpParams(lam, phi)) - expected) < 1e-13
    assert abs(mp(1, 0.0, MpParams(1, math.pi / 2))) < 1e-14


@pytest.mark.parametrize(
    "random_params, evaluator, sumrep, x_range",
    [
        (random_wilson, wilson, wilson_sumrep, (0.5, 5)),
        (random_cdh, cdh, cdh_sumrep, (0.1, 5)),
        (random_chahn, chahn, chahn_sumrep, (-5, 5)),
        (random_mp, mp, mp_sumrep, (-5, 5)),
    ],
)
def test_definition_matches_sum_representation(rng, random_params, evaluator, sumrep, x_range):
    for _ in range(20):
        params = random_params(rng)
        x = rng.uniform(*x_range)
        for n in range(9):
            left, right = evaluator(n, x, params), sumrep(n, x, params)
            assert abs(left - right) <= 1e-10 * condition_scale(n, x, params)


def test_scaled_value_divides_by_growth_order(rng):
    for random_params in (random_wilson, random_cdh, random_chahn, random_mp):
        params = random_params(rng)
        order = family_of(params).growth_order
        for n in (0, 3, 6):
            x = rng.uniform(0.5, 4)
            ratio = evaluate(n, x, params) / math.factorial(n) ** order
            scale = condition_scale(n, x, params) / math.factorial(n) ** order
            assert abs(scaled_value(n, x, params) - ratio) <= 1e-10 * max(1.0, scale)


def test_scaled_value_wilson_at_origin():
    p = WilsonParams(0.5, 1, 1.5, 2)
    assert abs(scaled_value(2, 0.0, p) * 8 - wilson(2, 0.0, p)) < 1e-12 * abs(wilson(2, 0.0, p))


def test_wilson_symmetry(rng):
    for _ in range(5):
        params = random_wilson(rng)
        x = rng.uniform(0.1, 5)
        for n in (2, 5):
            base = wilson(n, x, params)
            scale = condition_scale(n, x, params)
            for order in itertools.permutations(params.as_tuple()):
                other = WilsonParams(*order)
                tolerance = 1e-12 * max(scale, condition_scale(n, x, other))
                assert abs(wilson(n, x, other) - base) <= tolerance


def test_cdh_symmetry(rng):
    for _ in range(5):
        params = random_cdh(rng)
        x = rng.uniform(0.1, 5)
        for n in (2, 6):
            base = cdh(n, x, params)
            for order in itertools.permutations(params.as_tuple()):
                other = CdhParams(*order)
                tolerance = 1e-12 * max(condition_scale(n, x, params), condition_scale(n, x, other))
                assert abs(cdh(n, x, other) - base) <= tolerance


def test_chahn_symmetry(rng):
    for _ in range(5):
        params = random_chahn(rng)
        swapped = ChahnParams(params.b, params.a)
        x = rng.uniform(-5, 5)
        for n in (2, 6):
            tolerance = 1e-12 * max(condition_scale(n, x, params), condition_scale(n, x, swapped))
            assert abs(chahn(n, x, params) - chahn(n, x, swapped)) <= tolerance


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wilson_degree_by_differencing(n):
    p = WilsonParams(0.6, 1.1, 1.8, 2.4)
    values = np.array([wilson(n, math.sqrt(1.0 + j), p) for j in range(n + 2)])
    leading = np.diff(values, n)
    vanishing = np.diff(values, n + 1)
    expected = (-1) ** n * math.factorial(n) * pochhammer(n + p.total - 1, n).real
    assert np.all(np.abs(leading - expected) <= 1e-8 * abs(expected))
    assert abs(vanishing[0]) <= 1e-8 * abs(expected)


def test_realness_on_conjugate_pairs(rng):
    for _ in range(20):
        x = rng.uniform(0.1, 5)
        for n in (3, 7):
            assert isinstance(wilson(n, x, random_wilson(rng)), float)
            assert isinstance(cdh(n, x, random_cdh(rng)), float)
            assert isinstance(mp(n, x, random_mp(rng)), float)


def test_reality_threshold():
    assert _real(2 + 1e-12j) == 2
    with pytest.raises(RealityError):
        _real(1 + 1e-6j)


def test_parameter_validation():
    WilsonParams(1 + 1j, 1, 1 - 1j, 2)
    CdhParams(1 + 1j, 1 - 1j, 0.5)
    with pytest.raises(DomainError):
        WilsonParams(1, 1 + 1j, 1, 1)
    with pytest.raises(DomainError):
        WilsonParams(-1, 1, 1, 1)
    with pytest.raises(DomainError):
        CdhParams(1, 2j + 1, 2j + 1)
    with pytest.raises(DomainError):
        ChahnParams(0, 1)
    with pytest.raises(DomainError):
        MpParams(1, 0)
    with pytest.raises(DomainError):
        MpParams(0, 1)


def test_evaluation_domain():
    p = WilsonParams(1, 1, 1, 1)
    with pytest.raises(DomainError):
        wilson_sumrep(2, 0.0, p)
    with pytest.raises(DomainError):
        wilson(2, -1.0, p)
    with pytest.raises(DomainError):
        cdh(201, 1.0, CdhParams(1, 1, 1))


LIMIT_CASES = [
    (LimitKind.W_CDH, CdhParams(0.5, 1.0, 1.5), 0.7),
    (LimitKind.W_CH, ChahnParams(0.6 + 0.3j, 1.1 - 0.2j), 0.4),
    (LimitKind.CDH_MP, MpParams(0.8, 1.1), 0.5),
]


@pytest.mark.parametrize("kind, params, x", LIMIT_CASES)
def test_limit_degree_zero(kind, params, x):
    for t in (10.0, 1e3, 1e6):
        assert limit_residual(kind, 0, x, params, t) == 0


@pytest.mark.parametrize("kind, params, x", LIMIT_CASES)
def test_limit_first_order_rate(kind, params, x):
    for n in (1, 2, 3):
        near, far = (limit_residual(kind, n, x, params, t) for t in (100.0, 1000.0))
        assert limit_residual(kind, n, x, params, 10.0) > far
        assert 0.05 <= far / near <= 0.2


def test_limit_first_order_exact():
    # for n = 1 the Wilson-to-CDH residual is (a^2 + x^2)(b + c)/(a + t)
    a, b, c, x, t = 0.5, 1.0, 1.5, 0.7, 250.0
    expected = (a * a + x * x) * (b + c) / (a + t)
    residual = limit_residual(LimitKind.W_CDH, 1, x, CdhParams(a, b, c), t)
    assert abs(residual - expected) < 1e-12


def test_cdh_to_mp_normalization():
    lam, phi, x = 0.8, 1.1, 0.5
    params = MpParams(lam, phi)
    # n = 1: residual is |lam^2 - x^2| sin(phi) / t
    t = 40.0
    expected = abs(lam * lam - x * x) * math.sin(phi) / t
    assert abs(limit_residual(LimitKind.CDH_MP, 1, x, params, t) - expected) < 1e-12

    for n in (2, 3):
        source = cdh_raw(n, x - t, lam + 1j * t, lam - 1j * t, t / math.tan(phi))
        source /= pochhammer(t / math.sin(phi), n) * math.factorial(n)
        expected = abs(source - mp(n, x, params))
        residual = limit_residual(LimitKind.CDH_MP, n, x, params, t)
        assert residual == pytest.approx(expected, rel=1e-8, abs=1e-12)


def test_limit_validation():
    with pytest.raises(DomainError):
        limit_residual(LimitKind.W_CDH, 1, 0.5, MpParams(1, 1), 100.0)
    with pytest.raises(DomainError):
        limit_residual("cdh-mp", 1, 0.5, MpParams(1, 1), -1.0)


def test_mp_growth_sigma():
    params = MpParams(1, math.pi / 2)
    k, sigma = growth_bound_check(Family.MP, 40, 0.0, params)
    assert sigma <= 3
    for n in range(41):
        assert abs(mp_sumrep(n, 0.0, params)) <= k * (1 + n) ** sigma * (1 + 1e-12)


@pytest.mark.parametrize(
    "family, params, x",
    [
        (Family.CDH, CdhParams(1, 1, 1), 0.5),
        (Family.CDH, CdhParams(0.3, 0.8 + 1.2j, 0.8 - 1.2j), 2.5),
        (Family.WILSON, WilsonParams(0.5, 1.0, 1.5, 2.0), 1.2),
    ],
)
def test_growth_envelope_holds(family, params, x):
    k, sigma = growth_bound_check(family, 25, x, params)
    assert 0 < k <= 1e6 and 0 <= sigma <= 50
    for n in range(26):
        assert abs(scaled_value(n, x, params)) <= k * (1 + n) ** sigma * (1 + 1e-12)


def test_chahn_growth_through_thirty(rng):
    for _ in range(5):
        params = random_chahn(rng)
        x = rng.uniform(-5, 5)
        k, sigma = growth_bound_check(Family.CHAHN, 30, x, params)
        for n in range(31):
            bound = k * math.factorial(n) * (1 + n) ** sigma
            assert abs(chahn_sumrep(n, x, params)) <= bound * (1 + 1e-9)


def test_growth_validation():
    with pytest.raises(DomainError):
        growth_bound_check(Family.CDH, 7, 0.5, CdhParams(1, 1, 1))
    with pytest.raises(DomainError):
        growth_bound_check(Family.MP, 10, 0.5, CdhParams(1, 1, 1))
