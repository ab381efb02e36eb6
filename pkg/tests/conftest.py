"""Shared hooks: print one PASS/FAIL line per acceptance criterion after the run."""

import re

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call":
        _outcomes[num] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _outcomes[num] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        word = "PASS" if _outcomes[num] == "passed" else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {num}: {word}")
