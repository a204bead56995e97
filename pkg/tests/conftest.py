"""Collects acceptance outcomes and prints one line per criterion."""

import pytest

_results: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): acceptance criterion this test covers")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(marker.args[0], []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results, key=lambda s: int(s[2:])):
        outcomes = _results[name]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{name}: {status} ({len(outcomes)} checks)")
