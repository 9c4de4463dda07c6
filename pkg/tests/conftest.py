import numpy as np
import pytest

from comp_noma import (SystemParams, build_layout, db_to_linear,
                       derive_link_statistics)


@pytest.fixture(scope="session")
def default_layout():
    return build_layout(1.0, (0.5, 0.5, 0.5), (0.95, 0.95, 0.95))


@pytest.fixture(scope="session")
def default_stats(default_layout):
    return derive_link_statistics(default_layout, 4.0, 0.001)


@pytest.fixture(scope="session")
def params_20db():
    return SystemParams(alpha=0.1, rho=db_to_linear(20.0), upsilon=0.01)


@pytest.fixture(scope="session")
def params_10db():
    return SystemParams(alpha=0.1, rho=db_to_linear(10.0), upsilon=0.01)


@pytest.fixture
def rng():
    return np.random.default_rng(20240815)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import RESULT_LINES
    except ImportError:
        return
    if RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in RESULT_LINES:
            terminalreporter.line(line)
