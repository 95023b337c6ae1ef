from __future__ import annotations

import pytest

from unitary_rds.quad_arith import presets


@pytest.fixture(params=["unramified", "ramified"])
def cfg(request):
    return presets(5)[request.param]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
