import numpy as np
import pytest

from qsiegel.quad import QuadratureSpec

# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def spec():
    return QuadratureSpec()


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
