import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PELLSQUARES_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="set PELLSQUARES_LONG=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE_LINES = []


def acceptance_line(number, title, ok, detail=""):
    """Record and print one criterion outcome."""
    status = "PASS" if ok is True else ("FAIL" if ok is False else ok)
    line = f"[{status}] {number:>2}. {title}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
