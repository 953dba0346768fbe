"""Shared pytest hooks.

The acceptance suite (tests/test_acceptance.py) doubles as the release
gate, so its outcome is echoed as one PASS/FAIL line per criterion at
the end of every run that includes it.
"""

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    _ACCEPTANCE_RESULTS.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, verdict in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"  {verdict}  {name}")
