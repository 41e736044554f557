import mpmath
import pytest

from hypseries import PrecCtx


def close(a, b, digits, relative=False):
    """``|a - b| < 10**-digits`` (scaled by ``|b|`` when ``relative``)."""
    a, b = mpmath.mpc(a), mpmath.mpc(b)
    scale = max(abs(b), 1) if relative else 1
    return abs(a - b) < mpmath.mpf(10) ** (-digits) * scale


@pytest.fixture
def ctx20():
    return PrecCtx(20)


@pytest.fixture
def ctx30():
    return PrecCtx(30)


@pytest.fixture
def ctx40():
    return PrecCtx(40)


# PASS/FAIL lines from the acceptance suite, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
