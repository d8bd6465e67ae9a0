from __future__ import annotations

import pytest

_verdicts: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_runtest_logreport(report):
    marker = dict(report.user_properties).get("criterion")
    if marker is None or (report.when != "call" and report.passed):
        return
    number, title = marker
    detail = dict(report.user_properties).get("detail", "")
    prev = _verdicts.get(number)
    if prev is None or prev[0] == "PASS":
        _verdicts[number] = ("PASS" if report.passed else "FAIL", title, detail)


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        item.user_properties.append(("criterion", tuple(marker.args)))


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_verdicts):
        verdict, title, detail = _verdicts[number]
        line = f"{verdict} criterion {number}: {title}"
        terminalreporter.write_line(f"{line} ({detail})" if detail else line)
