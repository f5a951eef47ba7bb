"""Shared pytest hooks: per-criterion summary lines for the acceptance run."""

import re

_CRITERION_RE = re.compile(r"test_criterion_(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    match = _CRITERION_RE.search(report.nodeid)
    if match is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results[int(match.group(1))] = (match.group(2), report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number in sorted(_results):
        slug, outcome = _results[number]
        status = {"passed": "pass", "failed": "FAIL"}.get(outcome, outcome)
        terminalreporter.write_line(
            f"criterion {number:2d} ({slug.replace('_', ' ')}): {status}"
        )
