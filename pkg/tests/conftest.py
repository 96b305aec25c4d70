import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from maxplus import fixtures  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ex():
    """Shipped example matrices by fixture name."""
    return {name: fixtures.load(name) for name in fixtures.names()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
