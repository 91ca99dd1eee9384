import re

_ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE_RESULTS[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def criterion_key(name):
        match = re.search(r"criterion_(\d+)", name)
        return int(match.group(1)) if match else 99
    for name in sorted(_ACCEPTANCE_RESULTS, key=criterion_key):
        outcome = _ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(
            f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}"
        )
