import json
import os
import platform
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from logging import Logger
from collections import defaultdict
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from askey.error_handler import ConfigError
from askey.identities import IdentityId, sample_input, verify
from askey.props import PropertyRunner, case_generator, property_names
from askey.quadrature import CorollaryChecker, CorollaryId, corollary_draw
from askey.records import Outcome, RecordKind, VerificationRecord

SUITES = ("identities", "corollaries", "properties")
ALL = "all"
REPORT_VERSION = 1
SUSPECT_MIN_TRIALS = 2
TABLE_COLUMNS = [
    "kind",
    "tag",
    "trial",
    "outcome",
    "rel_err",
    "suspected_typo",
    "wall_time_ms",
    "reason",
]

Task = Callable[[], List[VerificationRecord]]


def known_tags() -> Dict[str, str]:
    """Every selectable tag with the suite it belongs to"""
    tags = {identity.value: "identities" for identity in IdentityId}
    tags.update({corollary.value: "corollaries" for corollary in CorollaryId})
    tags.update({name: "properties" for name in property_names()})
    return tags


@dataclass
class RunConfig:
    suites: List[str] = field(default_factory=lambda: [ALL])
    seed: int = 42
    trials: int = 5
    tol: float = 1e-8
    report_path: Optional[str] = None
    table_path: Optional[str] = None
    include: List[str] = field(default_factory=list)
    exclude: List[str] = field(default_factory=list)
    threads: int = 1

    def validate(self) -> "RunConfig":
        unknown_suites = [s for s in self.suites if s != ALL and s not in SUITES]
        if unknown_suites:
            raise ConfigError(f"unknown suite(s): {', '.join(unknown_suites)}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed={self.seed} is not a 64-bit unsigned integer")
        if self.trials < 1:
            raise ConfigError(f"trials={self.trials} must be at least 1")
        if not self.tol > 0:
            raise ConfigError(f"tol={self.tol} must be positive")
        if self.threads < 1:
            raise ConfigError(f"threads={self.threads} must be at least 1")

        tags = known_tags()
        unknown = [tag for tag in [*self.include, *self.exclude] if tag not in tags]
        if unknown:
            raise ConfigError(f"unknown tag(s): {', '.join(unknown)}")
        overlap = sorted(set(self.include) & set(self.exclude))
        if overlap:
            raise ConfigError(f"tag(s) both included and excluded: {', '.join(overlap)}")
        return self

    @property
    def selected_suites(self) -> List[str]:
        if ALL in self.suites:
            return list(SUITES)
        return [suite for suite in SUITES if suite in self.suites]

    def selects(self, tag: str) -> bool:
        if self.include and tag not in self.include:
            return False
        return tag not in self.exclude

    def to_dict(self) -> dict:
        return asdict(self)


def environment_stamp() -> dict:
    return {
        "python": platform.python_version(),
        "platform": platform.platform(),
        "numpy": np.__version__,
        "pandas": pd.__version__,
        "argv": sys.argv[1:],
        "timestamp": datetime.now(timezone.utc).replace(microsecond=0).isoformat(),
    }


def summarize(records: List[VerificationRecord]) -> dict:
    counts = {outcome.value: 0 for outcome in Outcome}
    for record in records:
        counts[record.outcome.value] += 1
    return {"total": len(records), **counts}


def exit_status(records: List[VerificationRecord]) -> int:
    return int(any(record.outcome is Outcome.FAIL for record in records))


def flag_suspected_typos(
    records: List[VerificationRecord], min_trials: int = SUSPECT_MIN_TRIALS
) -> List[str]:
    """Mark identity failures that look like a misprinted right side

    An identity qualifies when both sides were evaluated and still disagree
    in at least min_trials distinct draws while some other identity in the
    run has no failure at all. Returns the flagged tags.
    """
    identities = [record for record in records if record.kind is RecordKind.IDENTITY]
    failing = defaultdict(set)
    broken = set()
    for record in identities:
        if record.outcome is Outcome.FAIL:
            broken.add(record.tag)
            if record.rel_err is not None:
                failing[record.tag].add(record.trial)

    if not {record.tag for record in identities} - broken:
        return []

    flagged = sorted(tag for tag, trials in failing.items() if len(trials) >= min_trials)
    for record in identities:
        if record.tag in flagged:
            record.suspected_typo = record.outcome is Outcome.FAIL and record.rel_err is not None
    return flagged


def build_report(run_config: RunConfig, records: List[VerificationRecord]) -> dict:
    ordered = sorted(records, key=lambda record: record.sort_key)
    return {
        "version": REPORT_VERSION,
        "config": run_config.to_dict(),
        "environment": environment_stamp(),
        "records": [record.to_dict() for record in ordered],
        "summary": summarize(ordered),
    }


def write_report(report: dict, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(report, f, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)
        f.write("\n")


def read_report(path: str) -> Tuple[dict, List[VerificationRecord]]:
    with open(path, encoding="utf-8") as f:
        report = json.load(f)
    return report, [VerificationRecord.from_dict(data) for data in report["records"]]


def record_table(records: List[VerificationRecord]) -> pd.DataFrame:
    rows = []
    for record in sorted(records, key=lambda record: record.sort_key):
        data = record.to_dict()
        rows.append({column: data[column] for column in TABLE_COLUMNS})
    return pd.DataFrame(rows, columns=TABLE_COLUMNS)


class Verifier:
    def __init__(self, config: dict, logger: Logger = Logger(__name__)):
        self.config = config
        self.identities = config["IDENTITIES"]
        self.sampling = config["SAMPLING"]
        self.logger = logger
        self.corollary_checker = CorollaryChecker(config, logger)
        self.property_runner = PropertyRunner(config, logger)

    def radius(self, identity: IdentityId) -> float:
        overrides = self.identities.get("RHO_RADIUS_OVERRIDE") or {}
        return overrides.get(identity.value, self.identities["RHO_RADIUS"])

    def verify_identity(self, identity: IdentityId, run_config: RunConfig) -> List[VerificationRecord]:
        records = []
        for trial in range(run_config.trials):
            rng = case_generator(run_config.seed, identity.value, trial)
            inp = sample_input(
                identity,
                rng,
                self.sampling,
                radius=self.radius(identity),
                bound_fraction=self.identities["BOUND_FRACTION"],
                max_attempts=self.identities["MAX_ATTEMPTS"],
            )
            record = verify(
                inp,
                tol=run_config.tol,
                k_start=self.identities["K_START"],
                k_cap=self.identities["K_CAP"],
                trial=trial,
            )
            self.logger.debug(
                f"{record.tag} trial {trial}: {record.outcome.value} rel_err={record.rel_err}"
            )
            if record.outcome is Outcome.FAIL:
                self.logger.warning(f"{record.tag} trial {trial} failed: {record.reason}")
            records.append(record)
        return records

    def verify_corollary(self, corollary: CorollaryId, run_config: RunConfig) -> List[VerificationRecord]:
        quadrature = self.config["QUADRATURE"]
        records = []
        trial = 0
        for draw in range(run_config.trials):
            rng = case_generator(run_config.seed, corollary.value, draw)
            inp = corollary_draw(corollary, rng, self.sampling, quadrature["ANGLE_RANGE"])
            for rho in quadrature["RHO_VALUES"]:
                for k in quadrature["K_VALUES"]:
                    records.append(
                        self.corollary_checker.check(corollary, k, inp.params, inp.aux, rho, trial)
                    )
                    trial += 1
        return records

    def tasks(self, run_config: RunConfig) -> List[Tuple[str, Task]]:
        suites = run_config.selected_suites
        tasks: List[Tuple[str, Task]] = []
        if "identities" in suites:
            for identity in IdentityId:
                if run_config.selects(identity.value):
                    tasks.append(
                        (identity.value, lambda i=identity: self.verify_identity(i, run_config))
                    )
        if "corollaries" in suites:
            for corollary in CorollaryId:
                if run_config.selects(corollary.value):
                    tasks.append(
                        (corollary.value, lambda c=corollary: self.verify_corollary(c, run_config))
                    )
        if "properties" in suites:
            for name in property_names():
                if run_config.selects(name):
                    tasks.append(
                        (name, lambda n=name: [self.property_runner.run_one(n, run_config.seed)])
                    )
        return tasks

    def run(self, run_config: RunConfig) -> List[VerificationRecord]:
        """Run the selected suites; records come back ordered by (kind, tag, trial)"""
        run_config.validate()
        tasks = self.tasks(run_config)
        self.logger.info(
            f"In process: {len(tasks)} tags from {', '.join(run_config.selected_suites)} "
            f"with seed {run_config.seed} on {run_config.threads} thread(s)."
        )

        records: List[VerificationRecord] = []
        with ThreadPoolExecutor(max_workers=run_config.threads) as pool:
            for (tag, _), result in zip(tasks, pool.map(lambda task: task[1](), tasks)):
                records.extend(result)
                self.logger.info(f"End of processing: {tag}.")

        records.sort(key=lambda record: record.sort_key)
        min_trials = self.config["HARNESS"].get("SUSPECT_MIN_TRIALS", SUSPECT_MIN_TRIALS)
        for tag in flag_suspected_typos(records, min_trials):
            self.logger.warning(f"{tag} fails across draws while other identities pass, suspected typo.")
        summary = summarize(records)
        self.logger.info(
            f"Process completed: {summary['total']} records, {summary['pass']} passed, "
            f"{summary['fail']} failed, {summary['skip']} skipped."
        )
        return records

    def verify(self, run_config: RunConfig) -> Tuple[int, dict]:
        """Run, write the report and table when asked, and return (exit status, report)"""
        records = self.run(run_config)
        report = build_report(run_config, records)
        if run_config.report_path:
            write_report(report, run_config.report_path)
            self.logger.info(f"Report written to {run_config.report_path}.")
        if run_config.table_path:
            record_table(records).to_csv(run_config.table_path, index=False, encoding="utf-8")
            self.logger.info(f"Table written to {run_config.table_path}.")
        return exit_status(records), report
