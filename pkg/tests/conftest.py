import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_results = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    key = (int(match.group(1)), match.group(2))
    if report.failed:
        _results[key] = "FAIL"
    elif report.when == "call" and key not in _results:
        _results[key] = "PASS" if report.passed else "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for (number, name), outcome in sorted(_results.items()):
        terminalreporter.write_line(f"criterion {number} [{name.replace('_', ' ')}]: {outcome}")
