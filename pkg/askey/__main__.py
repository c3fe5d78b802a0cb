import os
import re
import sys
import json
import yaml
import argparse
from logging import Logger
from typing import List, Optional, Sequence

import pandas as pd

PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(PACKAGE_DIR)
LOG_DIR = os.path.join(ROOT_DIR, "log")
sys.path.append(ROOT_DIR)

from askey.error_handler import ConfigError, DomainError
from askey.families import PARAMS_OF, Family, evaluate
from askey.harness import SUITES, RunConfig, Verifier
from askey.identities import CATALOG, IdentityId
from askey.props import PROPERTIES, property_names
from askey.quadrature import COROLLARIES, CorollaryChecker, CorollaryId
from askey.records import Outcome
from askey.utils import get_logger

_REAL = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
COMPLEX_PATTERN = re.compile(rf"^(?P<re>[+-]?{_REAL})(?:(?P<sign>[+-])(?P<im>{_REAL})i)?$")

# flag name -> field name for family parameters
PARAM_FLAGS = {"a": "a", "b": "b", "c": "c", "d": "d", "lambda": "lam", "phi": "phi"}
AUX_FLAGS = ("h", "f", "gamma", "psi")


def parse_complex(text: str) -> complex:
    """Strict <real>[(+|-)<real>i] grammar

    Example:
        >>> parse_complex("1.0+0.5i")
        (1+0.5j)
    """
    match = COMPLEX_PATTERN.match(text.strip())
    if match is None:
        raise ConfigError(f"malformed number {text!r}, expected <real>[+-<real>i]")
    value = complex(float(match["re"]), 0.0)
    if match["im"] is not None:
        im = float(match["im"])
        value += complex(0.0, -im if match["sign"] == "-" else im)
    return value


def parse_real(text: str) -> float:
    value = parse_complex(text)
    if value.imag != 0:
        raise ConfigError(f"{text!r} must be real")
    return value.real


def thread_count(config: dict) -> int:
    name = config["HARNESS"]["THREADS_ENV"]
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return 1
    try:
        threads = int(raw)
    except ValueError:
        raise ConfigError(f"{name}={raw!r} is not an integer")
    if threads < 1:
        raise ConfigError(f"{name}={raw!r} must be at least 1")
    return threads


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    for flag, name in PARAM_FLAGS.items():
        parser.add_argument(f"--{flag}", dest=name, type=parse_complex, default=None)


def get_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="askey")
    subparsers = parser.add_subparsers(dest="verb", required=True)

    verify = subparsers.add_parser("verify", help="run identity, corollary and property suites")
    verify.add_argument(
        "--suite", action="append", choices=[*SUITES, "all"], help="repeatable, default all"
    )
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--trials", type=int, default=None)
    verify.add_argument("--tol", type=parse_real, default=None)
    verify.add_argument("--report", type=str, default=None, help="JSON report path")
    verify.add_argument("--table", type=str, default=None, help="CSV record table path")
    verify.add_argument("--include", action="append", default=[], help="tag, repeatable")
    verify.add_argument("--exclude", action="append", default=[], help="tag, repeatable")

    evaluate_parser = subparsers.add_parser("eval", help="evaluate one polynomial")
    evaluate_parser.add_argument("family", choices=[family.value for family in Family])
    evaluate_parser.add_argument("--n", type=int, required=True)
    evaluate_parser.add_argument("--x", type=parse_real, required=True)
    _add_param_flags(evaluate_parser)

    subparsers.add_parser("list", help="print identity, corollary and property tags")

    integrate = subparsers.add_parser("integrate", help="check one corollary by quadrature")
    integrate.add_argument("corollary", choices=[corollary.value for corollary in CorollaryId])
    integrate.add_argument("--k", type=int, required=True)
    integrate.add_argument("--rho", type=parse_complex, required=True)
    _add_param_flags(integrate)
    for flag in AUX_FLAGS:
        integrate.add_argument(f"--{flag}", type=parse_complex, default=None)

    return parser.parse_args(argv)


def load_config() -> dict:
    with open(os.path.join(PACKAGE_DIR, "config.yaml")) as f:
        return yaml.safe_load(f)


def _as_real(flag: str, value: complex) -> float:
    if value.imag != 0:
        raise ConfigError(f"--{flag} must be real")
    return value.real


def family_params(family: Family, args: argparse.Namespace, reserved: Sequence[str] = ()):
    """Parameter record of family from the flags; flags the family does not take are an error"""
    record = PARAMS_OF[family]
    values = {}
    for flag, name in PARAM_FLAGS.items():
        value = getattr(args, name)
        if name in record.__dataclass_fields__:
            if value is None:
                raise ConfigError(f"{family.value} needs --{flag}")
            values[name] = _as_real(flag, value) if family is Family.MP else value
        elif value is not None and name not in reserved:
            raise ConfigError(f"--{flag} is not a {family.value} parameter")
    return record(**values)


def cmd_eval(args: argparse.Namespace) -> int:
    family = Family(args.family)
    params = family_params(family, args)
    value = complex(evaluate(args.n, args.x, params))
    if family is Family.CHAHN:
        print(f"{value.real:.15g} {value.imag:.15g}")
    else:
        print(f"{value.real:.15g}")
    return 0


def catalog_table() -> pd.DataFrame:
    rows = [
        {"tag": identity.value, "kind": "identity", "anchor": CATALOG[identity].anchor}
        for identity in IdentityId
    ]
    rows += [
        {"tag": corollary.value, "kind": "corollary", "anchor": COROLLARIES[corollary].anchor}
        for corollary in CorollaryId
    ]
    rows += [
        {"tag": name, "kind": "property", "anchor": PROPERTIES[name].description}
        for name in property_names()
    ]
    return pd.DataFrame(rows, columns=["tag", "kind", "anchor"])


def cmd_list() -> int:
    with pd.option_context("display.max_rows", None, "display.max_colwidth", None, "display.width", None):
        print(catalog_table().to_string(index=False))
    return 0


def cmd_integrate(args: argparse.Namespace, config: dict, logger: Logger) -> int:
    corollary = CorollaryId(args.corollary)
    descriptor = corollary.identity.descriptor
    params = family_params(descriptor.family, args, reserved=descriptor.aux)

    aux = {}
    for name in descriptor.aux:
        value = getattr(args, name)
        if value is None:
            raise ConfigError(f"{corollary.value} needs --{name}")
        aux[name] = _as_real(name, value) if name == "psi" else value
    for flag in AUX_FLAGS:
        if flag not in descriptor.aux and getattr(args, flag) is not None:
            raise ConfigError(f"--{flag} is not used by {corollary.value}")

    record = CorollaryChecker(config, logger).check(corollary, args.k, params, aux, args.rho)
    print(json.dumps(record.to_dict(), sort_keys=True, ensure_ascii=False))
    return int(record.outcome is Outcome.FAIL)


def cmd_verify(args: argparse.Namespace, config: dict, logger: Logger) -> int:
    harness = config["HARNESS"]
    run_config = RunConfig(
        suites=args.suite or list(harness["SUITES"]),
        seed=harness["SEED"] if args.seed is None else args.seed,
        trials=harness["TRIALS"] if args.trials is None else args.trials,
        tol=config["IDENTITIES"]["TOL"] if args.tol is None else args.tol,
        report_path=args.report,
        table_path=args.table,
        include=args.include,
        exclude=args.exclude,
        threads=thread_count(config),
    ).validate()
    status, report = Verifier(config, logger).verify(run_config)
    summary = report["summary"]
    print(
        f"{summary['total']} records: {summary['pass']} passed, "
        f"{summary['fail']} failed, {summary['skip']} skipped"
    )
    return status


def main(argv: Optional[List[str]] = None) -> int:
    args = get_args(argv)
    config = load_config()
    logger = get_logger("MAIN", file_path=os.path.join(LOG_DIR, "main.log"))

    try:
        if args.verb == "verify":
            return cmd_verify(args, config, logger)
        if args.verb == "eval":
            return cmd_eval(args)
        if args.verb == "list":
            return cmd_list()
        return cmd_integrate(args, config, logger)
    except (ConfigError, DomainError) as e:
        print(f"askey: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
