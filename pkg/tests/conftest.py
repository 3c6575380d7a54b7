from __future__ import annotations

import pytest
from hypothesis import settings

# exact arithmetic on random inputs has a wide runtime spread
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

# one line per acceptance criterion, filled in by test_acceptance.py
CRITERION_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Record a criterion's outcome and fail the test if it did not hold."""

    def report(number: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:02d}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        CRITERION_LINES.append(line)
        print(line)
        assert ok, line

    return report
