import os
import sys
import json
import pytest
import yaml
from collections import Counter
from unittest.mock import Mock

TEST_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(os.path.dirname(os.path.dirname(TEST_DIR)))
sys.path.append(ROOT_DIR)

from askey.error_handler import DomainError, UnknownProperty
from askey.props import (
    PROPERTIES,
    SAMPLING,
    PropertyRunner,
    case_generator,
    property_names,
    run_property,
)
from askey.records import Outcome, RecordKind

CHEAP = [
    "pochhammer-split",
    "pochhammer-gamma-ratio",
    "gamma-recurrence",
    "chu-vandermonde",
    "whipple",
    "pfq-permutation",
    "cdh-symmetry",
    "chahn-symmetry",
    "wilson-degree",
    "connection-delta",
    "chahn-parity",
    "identity-degeneration",
]


@pytest.fixture(scope="module")
def config():
    with open(os.path.join(ROOT_DIR, "askey", "config.yaml")) as f:
        return yaml.safe_load(f)


def test_registry_covers_every_module():
    assert len(PROPERTIES) == 34
    modules = Counter(descriptor.module for descriptor in PROPERTIES.values())
    assert modules == {
        "arith": 4,
        "hypergeom": 4,
        "families": 9,
        "connections": 7,
        "identities": 5,
        "quadrature": 5,
    }
    assert property_names("arith") == sorted(
        ["pochhammer-split", "pochhammer-gamma-ratio", "bounds-w1..w4", "gamma-recurrence"]
    )
    assert all(descriptor.description for descriptor in PROPERTIES.values())


def test_default_sampling_comes_from_config(config):
    assert SAMPLING == config["SAMPLING"]
    assert SAMPLING["HALF_LINE_X"] == [0.0, 5.0]
    assert run_property("wilson-symmetry", seed=3).outcome is Outcome.PASS


def test_unknown_property():
    with pytest.raises(UnknownProperty):
        run_property("nonexistent", 1, 1)
    with pytest.raises(KeyError):
        run_property("nonexistent", 1, 1)


def test_wilson_symmetry():
    case = run_property("wilson-symmetry", 1, 20)
    assert case.outcome is Outcome.PASS
    assert case.draws == 20
    assert case.worst_error <= case.tolerance


def test_bounds():
    case = run_property("bounds-w1..w4", 3, 10_000)
    assert case.outcome is Outcome.PASS
    assert case.tolerance == 1e-12


def test_determinism():
    first = run_property("pochhammer-split", 5, 50)
    again = run_property("pochhammer-split", 5, 50)
    assert first == again
    assert first.worst_error == again.worst_error


def test_case_generator():
    a = case_generator(9, "whipple", 3).random(4)
    b = case_generator(9, "whipple", 3).random(4)
    c = case_generator(9, "whipple", 4).random(4)
    d = case_generator(9, "chu-vandermonde", 3).random(4)
    assert (a == b).all()
    assert not (a == c).all()
    assert not (a == d).all()
    with pytest.raises(DomainError):
        case_generator(-1, "whipple", 0)
    with pytest.raises(DomainError):
        case_generator(2**64, "whipple", 0)


def test_argument_validation():
    with pytest.raises(DomainError):
        run_property("whipple", 1, 0)
    with pytest.raises(DomainError):
        run_property("whipple", 1, 5, tol=-1.0)


def test_zero_tolerance_fails():
    case = run_property("gamma-recurrence", 3, 50, tol=0.0)
    assert case.outcome is Outcome.FAIL
    assert case.diagnostic["worst_draw"] is not None
    record = case.to_record()
    assert record.kind is RecordKind.PROPERTY
    assert record.reason


@pytest.mark.parametrize("name", CHEAP)
def test_cheap_properties(name):
    case = run_property(name, 11, 3)
    assert case.outcome is Outcome.PASS, case.diagnostic


def test_property_runner(config):
    logger = Mock()
    runner = PropertyRunner(config, logger)
    records = runner.run(1, ["whipple", "chahn-parity"])
    assert [record.tag for record in records] == ["whipple", "chahn-parity"]
    assert all(record.kind is RecordKind.PROPERTY for record in records)
    assert all(record.outcome is Outcome.PASS for record in records)
    assert records[0].inputs["draws"] == PROPERTIES["whipple"].draws
    json.dumps([record.to_dict() for record in records])
    logger.info.assert_called()
