"""Acceptance bookkeeping: one PASS/FAIL line per criterion at the end of a run."""
from __future__ import annotations

import pytest

_results: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    entry = _results.setdefault(n, {"title": title, "failed": [], "passed": [], "seconds": 0.0})
    entry["seconds"] += report.duration
    name = item.name.split("[")[0]
    if report.failed:
        entry["failed"].append(item.name)
    elif report.when == "call" and report.passed:
        entry["passed"].append(name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        r = _results[n]
        status = "FAIL" if r["failed"] else "PASS"
        line = f"criterion {n:>2} {status}  {r['title']}  ({r['seconds']:.1f}s)"
        if r["failed"]:
            line += "  failing: " + ", ".join(sorted(set(r["failed"])))
        terminalreporter.write_line(line)
