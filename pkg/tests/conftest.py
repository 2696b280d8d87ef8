import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from e2orbits.ring import gaussian_order, make_ring  # noqa: E402


@pytest.fixture
def zi():
    return gaussian_order(1)


@pytest.fixture
def z2i():
    return gaussian_order(2)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
