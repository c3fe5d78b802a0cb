from ._harness import (
    SUITES,
    RunConfig,
    Verifier,
    build_report,
    environment_stamp,
    exit_status,
    flag_suspected_typos,
    known_tags,
    read_report,
    record_table,
    summarize,
    write_report,
)

__all__ = [
    "SUITES",
    "RunConfig",
    "Verifier",
    "build_report",
    "environment_stamp",
    "exit_status",
    "flag_suspected_typos",
    "known_tags",
    "read_report",
    "record_table",
    "summarize",
    "write_report",
]
