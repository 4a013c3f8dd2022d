import numpy as np
import pytest
from hypothesis import settings

from ntrunc.complexes import interval, point

settings.register_profile("ntrunc", deadline=None, max_examples=40)
settings.load_profile("ntrunc")

# lines collected by the acceptance module, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def k0():
    return point(5, 0)


@pytest.fixture
def contractible():
    """[k -id-> k] in degrees -1, 0 over F_5."""
    return interval(5, -1, np.eye(1, dtype=np.int64))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
