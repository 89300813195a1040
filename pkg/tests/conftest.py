import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    n, title = crit
    state = _criteria.setdefault(n, [title, "pass"])
    if report.skipped and report.when in ("setup", "call") and state[1] == "pass":
        state[1] = "skip"
    elif report.failed:
        state[1] = "FAIL"


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", tuple(mark.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, state = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {state.upper():4s}  {title}")
