import time

import pytest

SUITE_BUDGET_S = 30.0

_start = time.perf_counter()
_criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((marker.args[0], marker.args[1], report.outcome))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start
    session.config._sandlink_elapsed = elapsed
    if elapsed > SUITE_BUDGET_S and session.testscollected > 100:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, title, outcome in sorted(_criteria):
        status = "PASS" if outcome == "passed" else "FAIL"
        tr.write_line(f"[{status}] criterion {number}: {title}")
    elapsed = getattr(config, "_sandlink_elapsed", time.perf_counter() - _start)
    status = "PASS" if elapsed <= SUITE_BUDGET_S else "FAIL"
    tr.write_line(f"[{status}] suite runtime {elapsed:.2f} s (budget {SUITE_BUDGET_S:.0f} s)")
