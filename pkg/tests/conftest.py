"""Collects acceptance outcomes and prints one line per criterion at the end."""

import pytest

_OUTCOMES: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, text = mark.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        status = "PASS" if report.passed else "FAIL"
        previous = _OUTCOMES.get(number)
        if previous is None or previous[0] == "PASS":
            _OUTCOMES[number] = (status, text)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        status, text = _OUTCOMES[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {text}")
