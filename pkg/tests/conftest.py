from __future__ import annotations

import pytest

_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for the acceptance summary."""
    def _report(label: str, ok: bool, detail: str, seconds: float) -> None:
        line = f"{'PASS' if ok else 'FAIL'} {label}: {detail} [{seconds:.2f}s]"
        _LINES.append(line)
        print(line)
    return _report


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
