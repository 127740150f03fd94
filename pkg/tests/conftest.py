import os
import re
from collections import OrderedDict

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def gf3_report():
    from nilalg.verify import verify_theorem_b

    return verify_theorem_b(3, exact_filter="all")


# acceptance summary: one line per criterion, aggregated over its tests

_CRITERION = re.compile(r"test_criterion_(\d+)([a-z]?)_(\w+?)(?:\[.*\])?$")
_results: "OrderedDict[str, list]" = OrderedDict()


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = _CRITERION.search(report.nodeid.split("::")[-1])
    if not m:
        return
    num, part, title = m.groups()
    _results.setdefault(num, []).append((part, title.replace("_", " "), report.outcome == "passed"))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results, key=int):
        parts = _results[num]
        ok = all(p[2] for p in parts)
        titles = sorted({p[1] for p in parts if not p[0]})
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}"
        if titles:
            line += f"  {'; '.join(titles)}"
        subs = [p for p in parts if p[0]]
        if subs:
            detail = ", ".join(f"{num}{p[0]}: {p[1]} {'PASS' if p[2] else 'FAIL'}" for p in subs)
            line += f"  ({detail})"
        terminalreporter.write_line(line)
