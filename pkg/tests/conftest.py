from __future__ import annotations

from pathlib import Path

import pytest

from splithansen.graph import Graph, SplitCert

GOLDEN = Path(__file__).parent / "golden"

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def p4() -> Graph:
    # 0-1-2-3, i.e. 1-2-3-4 in 1-based display
    return Graph.path(4)


@pytest.fixture
def p4_cert() -> SplitCert:
    return SplitCert(0b0110, 0b1001)
