import os
import sys
import cmath
import math
import pytest
import yaml
import numpy as np

TEST_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(os.path.dirname(os.path.dirname(TEST_DIR)))
sys.path.append(ROOT_DIR)

from askey.arith import pochhammer_ratio
from askey.error_handler import DomainError
from askey.families import CdhParams, ChahnParams, MpParams, WilsonParams, scaled_value
from askey.identities import (
    CATALOG,
    IdentityId,
    IdentityInput,
    RhoDomain,
    base_terms,
    degenerate,
    in_domain,
    lhs,
    lhs_derivative_at_zero,
    rho_bound,
    rhs_terms,
    rhs_truncated,
    sample_input,
    series_coefficient,
    skip_reason,
    verify,
)
from askey.records import Outcome

THEOREMS = [identity for identity in IdentityId if CATALOG[identity].free is not None]


@pytest.fixture(scope="module")
def config():
    with open(os.path.join(ROOT_DIR, "askey", "config.yaml")) as f:
        return yaml.safe_load(f)


@pytest.fixture(scope="module")
def sampling(config):
    return config["SAMPLING"]


def fixed_input(identity, rho=0.0):
    identity = IdentityId(identity)
    family = CATALOG[identity].family.value
    if identity is IdentityId.CDH_L6:
        aux = {"b": 0.8, "c": 1.3, "d": 0.6, "f": 0.4}
        return IdentityInput(identity, None, aux, 1.1, rho)
    if family == "wilson":
        aux = {"h": 0.6} if CATALOG[identity].aux else {}
        return IdentityInput(identity, WilsonParams(0.5, 0.7, 0.9, 1.1), aux, 1.3, rho)
    if family == "cdh":
        choices = {"f": 0.7, "d": 0.9, "gamma": 0.6 + 0.2j}
        aux = {name: choices[name] for name in CATALOG[identity].aux}
        return IdentityInput(identity, CdhParams(0.5, 0.8, 1.2), aux, 1.1, rho)
    if family == "chahn":
        params = ChahnParams(0.6 + 0.3j, 0.9 + 0.3j)
        return IdentityInput(identity, params, {"c": 0.7 + 0.3j}, -0.4, rho)
    choices = {"psi": 1.4, "gamma": 0.5 + 0.1j}
    aux = {name: choices[name] for name in CATALOG[identity].aux}
    return IdentityInput(identity, MpParams(0.8, 1.0), aux, 0.6, rho)


def test_catalog():
    assert len(IdentityId) == 15
    assert {identity.value for identity in IdentityId} == {
        "w-gf1", "w-gf2", "w-t1", "w-t2", "cdh-gf1", "cdh-l6", "cdh-t1", "cdh-t2",
        "cdh-t3", "ch-t1", "ch-t2", "mp-t1", "mp-t1e", "mp-t2", "mp-t3",
    }
    assert CATALOG[IdentityId.CDH_L6].aux_arity == 4
    assert CATALOG[IdentityId.W_GF1].aux_arity == 0
    assert CATALOG[IdentityId.MP_T3].aux_arity == 2
    powered = {identity for identity in IdentityId if CATALOG[identity].power_of_one_minus_rho}
    assert powered == {
        IdentityId.W_GF2, IdentityId.W_T2, IdentityId.CDH_GF1, IdentityId.CDH_L6,
        IdentityId.CDH_T1, IdentityId.CDH_T3, IdentityId.CH_T2, IdentityId.MP_T3,
    }
    assert CATALOG[IdentityId.CDH_T2].rho_domain is RhoDomain.ENTIRE
    assert CATALOG[IdentityId.MP_T1].rho_domain is RhoDomain.ANGLE


@pytest.mark.parametrize("identity", list(IdentityId))
def test_rho_zero(identity):
    inp = fixed_input(identity)
    assert lhs(inp) == 1
    assert rhs_truncated(inp, 0).value == 1
    record = verify(inp)
    assert record.outcome is Outcome.PASS
    assert record.rel_err == 0


def test_wilson_product_closed_form():
    inp = IdentityInput(IdentityId.W_GF1, WilsonParams(1, 1, 1, 1), x=0, rho=0.3)
    expected = (-math.log(0.7) / 0.3) ** 2
    assert abs(lhs(inp) - expected) < 1e-12


def test_mp_power_conjugate_factors():
    phi, rho = 1.1, 0.3
    inp = IdentityInput(IdentityId.MP_T1, MpParams(1, phi), {"psi": 1.3}, 0, rho)
    expected = abs(1 - cmath.exp(1j * phi) * rho) ** -2
    assert abs(lhs(inp) - expected) < 1e-13


def test_mp_closed_forms_agree():
    for rho in (0.2, 0.1 - 0.25j, -0.3j):
        series = rhs_truncated(fixed_input(IdentityId.MP_T1, rho), 200).value
        closed = rhs_truncated(fixed_input(IdentityId.MP_T1E, rho), 0).value
        assert abs(series - closed) < 1e-10 * max(1, abs(closed))
        assert abs(lhs(fixed_input(IdentityId.MP_T1E, rho)) - closed) < 1e-12 * abs(closed)


@pytest.mark.parametrize("identity", list(IdentityId))
def test_verify_random_draws(identity, config, sampling):
    rng = np.random.default_rng(100 + list(IdentityId).index(identity))
    overrides = config["IDENTITIES"]["RHO_RADIUS_OVERRIDE"]
    radius = overrides.get(identity.value, config["IDENTITIES"]["RHO_RADIUS"])
    for trial in range(5):
        inp = sample_input(identity, rng, sampling, radius=radius)
        record = verify(inp, tol=1e-8, trial=trial)
        assert record.outcome is Outcome.PASS, record.reason
        assert record.trial == trial
        assert record.tag == identity.value


def test_entire_identities_far_from_origin():
    rho = 3 * cmath.exp(0.7j)
    record = verify(fixed_input(IdentityId.CDH_T2, rho), tol=1e-7)
    assert record.outcome is Outcome.PASS
    record = verify(fixed_input(IdentityId.MP_T2, rho), tol=1e-7)
    assert record.outcome is Outcome.PASS


@pytest.mark.parametrize("identity", [IdentityId.CDH_T2, IdentityId.CH_T1, IdentityId.MP_T2])
def test_entire_identities_right_of_one(identity):
    for rho in (1.5, 2 + 1j, 4 - 0.5j):
        inp = fixed_input(identity, rho)
        assert skip_reason(inp) is None
        assert in_domain(inp)


@pytest.mark.parametrize("identity", THEOREMS)
def test_degeneration(identity, sampling):
    rng = np.random.default_rng(7)
    inp = sample_input(identity, rng, sampling)
    theorem = rhs_terms(degenerate(inp), 12)
    base = base_terms(inp, 12)
    for t, b in zip(theorem, base):
        assert abs(t - b) <= 1e-12 * (1 + abs(b))


def test_w_t1_reduces_to_product_generating_function():
    inp = fixed_input(IdentityId.W_T1, 0.35 + 0.1j)
    a, b, c, d = inp.params.as_tuple()
    reduced = rhs_terms(degenerate(inp), 10)
    assert degenerate(inp).aux["h"] == d
    for k, term in enumerate(reduced):
        expected = scaled_value(k, inp.x, inp.params) * pochhammer_ratio(
            [1, 1], [a + c, b + d], k, z=inp.rho
        )
        assert abs(term - expected) <= 1e-12 * (1 + abs(expected))


def test_degenerate_leaves_base_members():
    inp = fixed_input(IdentityId.W_GF2, 0.1)
    assert degenerate(inp) is inp


def test_monotone_refinement():
    inp = fixed_input(IdentityId.W_T1, 0.2 + 0.1j)
    reference = lhs(inp)
    half = rhs_truncated(inp, 16)
    full = rhs_truncated(inp, 32)
    err_half = abs(half.value - reference) / max(1, abs(reference))
    err_full = abs(full.value - reference) / max(1, abs(reference))
    assert err_full <= err_half + 2 * half.abs_err_est


@pytest.mark.parametrize(
    "identity",
    [
        IdentityId.W_T1,
        IdentityId.W_T2,
        IdentityId.CDH_L6,
        IdentityId.CDH_T1,
        IdentityId.CDH_T3,
        IdentityId.CH_T1,
        IdentityId.CH_T2,
        IdentityId.MP_T1,
        IdentityId.MP_T3,
    ],
)
def test_coefficient_extraction(identity):
    inp = fixed_input(identity)
    assert abs(series_coefficient(inp, 0) - 1) < 1e-12
    first = series_coefficient(inp, 1)
    derivative = lhs_derivative_at_zero(inp)
    assert abs(first - derivative) <= 1e-6 * max(1, abs(first))


def test_first_coefficient_of_product_generating_function():
    inp = fixed_input(IdentityId.W_GF1)
    a, b, c, d = inp.params.as_tuple()
    expected = scaled_value(1, inp.x, inp.params) / ((a + c) * (b + d))
    assert abs(series_coefficient(inp, 1) - expected) < 1e-10 * max(1, abs(expected))


def test_quadratic_argument_is_a_skip():
    inp = fixed_input(IdentityId.W_GF2, 0.3)
    assert skip_reason(inp) is not None
    assert not in_domain(inp)
    record = verify(inp)
    assert record.outcome is Outcome.SKIP
    assert record.reason
    with pytest.raises(DomainError):
        lhs(inp)


def test_hypotheses():
    with pytest.raises(DomainError):
        lhs(fixed_input(IdentityId.W_T1, 1.2))
    with pytest.raises(DomainError):
        verify(fixed_input(IdentityId.MP_T1, 0.99))
    with pytest.raises(DomainError):
        lhs(IdentityInput(IdentityId.CH_T1, ChahnParams(0.6 + 0.3j, 0.9), {"c": 0.7}, 0, 0.1))
    with pytest.raises(DomainError):
        IdentityInput(IdentityId.W_T1, WilsonParams(1, 1, 1, 1), {}, 1, 0.1)
    with pytest.raises(DomainError):
        IdentityInput(IdentityId.CDH_T2, WilsonParams(1, 1, 1, 1), {"d": 1}, 1, 0.1)
    with pytest.raises(DomainError):
        rhs_truncated(fixed_input(IdentityId.W_GF1, 0.1), 4096)


def test_single_failure_is_not_a_suspected_typo():
    # flagging needs failures across draws, see the harness
    ch = verify(fixed_input(IdentityId.CH_T1, 0.45), k_start=1, k_cap=1)
    assert ch.outcome is Outcome.FAIL
    assert not ch.suspected_typo
    wilson = verify(fixed_input(IdentityId.W_T1, 0.45), k_start=1, k_cap=1)
    assert wilson.outcome is Outcome.FAIL
    assert not wilson.suspected_typo


def test_sample_input(sampling):
    first = sample_input(IdentityId.MP_T3, np.random.default_rng(3), sampling)
    again = sample_input(IdentityId.MP_T3, np.random.default_rng(3), sampling)
    assert first == again
    rng = np.random.default_rng(4)
    for identity in IdentityId:
        inp = sample_input(identity, rng, sampling, radius=0.4)
        assert in_domain(inp)
        assert abs(inp.rho) <= min(0.4, 0.9 * rho_bound(inp))
