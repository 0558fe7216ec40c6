import numpy as np
import pytest

from superadiabatic import FAST_SWEEP, SLOW_SWEEP, iterate, landau_zener

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def slow_stack():
    return iterate(landau_zener(SLOW_SWEEP, 20001), 5)


@pytest.fixture(scope="session")
def fast_stack():
    return iterate(landau_zener(FAST_SWEEP, 20001), 4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)
