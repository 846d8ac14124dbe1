import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_START = time.perf_counter()
CRITERIA = []


@pytest.fixture
def criterion():
    """Record one pass/fail line; the line is echoed in the terminal summary."""

    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f"  ({detail})" if detail else "")
        CRITERIA.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
    terminalreporter.write_line(f"session wall time: {time.perf_counter() - _START:.1f} s")
