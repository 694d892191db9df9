import pytest

CRITERIA = {}


@pytest.fixture
def record():
    """record(n, ok, detail) stores one acceptance line; the last call for n wins."""
    def _record(n, ok, detail=""):
        CRITERIA[n] = (ok, detail)
        print(_line(n))
        return ok
    return _record


def _line(n):
    ok, detail = CRITERIA[n]
    tail = f" ({detail})" if detail else ""
    return f"criterion {n}: {'PASS' if ok else 'FAIL'}{tail}"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        terminalreporter.write_line(_line(n))
