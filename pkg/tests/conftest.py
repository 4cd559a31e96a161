"""Prints one summary line per acceptance criterion at the end of a run."""
import pytest

ACCEPTANCE_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        num = marker.args[0]
        desc = marker.args[1]
        ACCEPTANCE_RESULTS[num] = (report.outcome == "passed", desc)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(num, description): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        passed, desc = ACCEPTANCE_RESULTS[num]
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[criterion {num}] {word}: {desc}")
