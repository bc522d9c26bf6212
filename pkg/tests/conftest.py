"""Prints one PASS/FAIL line per acceptance criterion after the run."""

import re

_OUTCOMES: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    n, title = int(m.group(1)), m.group(2).replace("_", " ")
    if report.when == "call" or report.failed or report.skipped:
        prev = _OUTCOMES.get(n, (None, title))[0]
        if prev != "FAIL":
            state = "FAIL" if report.failed else ("SKIP" if report.skipped else "PASS")
            _OUTCOMES[n] = (state, title)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_OUTCOMES):
        state, title = _OUTCOMES[n]
        terminalreporter.write_line(f"criterion {n}: {state}  {title}")
