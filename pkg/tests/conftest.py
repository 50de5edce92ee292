import pytest

from learnspace import SetFamily, load_fixture


def fam(domain, *states):
    """``fam("abc", "", "a", "ab")``: one string of item letters per state."""
    return SetFamily.of(domain, [list(s) for s in states])


@pytest.fixture(scope="session")
def f_ex():
    return load_fixture("f_ex")


@pytest.fixture(scope="session")
def g_ex():
    return load_fixture("g_ex")


@pytest.fixture(scope="session")
def l_ex():
    return load_fixture("l_ex")


@pytest.fixture(scope="session")
def k_ny():
    return load_fixture("k_ny")


_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
