import pytest

from aodesolve import BiPoly


@pytest.fixture
def yp():
    return BiPoly.var(0), BiPoly.var(1)


ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record the verdict of one acceptance criterion for the end-of-run summary."""
    def record(number, text, ok):
        ACCEPTANCE[number] = (text, ok)
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        text, ok = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}")
