import pytest

from arrangement_reg.polynomial import PolynomialRing


@pytest.fixture
def R():
    return PolynomialRing(4)


@pytest.fixture
def xyzw(R):
    return R.gens()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
