"""Collects per-criterion outcomes from test_acceptance and prints one line each."""
from __future__ import annotations

import pytest

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "ran": False, "notes": []})
    if report.when == "call":
        entry["ran"] = True
        entry["notes"].extend(f"{k}={v}" for k, v in report.user_properties)
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        notes = "; ".join(entry["notes"])
        line = f"criterion {number:2d} {status}  {entry['title']}"
        terminalreporter.write_line(line + (f"  [{notes}]" if notes else ""))
