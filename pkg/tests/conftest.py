import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when not in ("setup", "call"):
        return
    number, title = marker.args
    notes = [v for k, v in item.user_properties if k == "note"]
    if rep.when == "setup" and not rep.failed:
        return
    _ACCEPTANCE[number] = (title, "PASS" if rep.passed else "FAIL", notes)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status, notes = _ACCEPTANCE[number]
        extra = f"  [{'; '.join(notes)}]" if notes else ""
        terminalreporter.write_line(f"criterion {number:>2} {status}: {title}{extra}")
