import contextlib

import pytest

ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line for an acceptance criterion."""

    @contextlib.contextmanager
    def record(name, detail=""):
        info = {"detail": detail}
        try:
            yield info
        except BaseException as exc:
            ACCEPTANCE.append(("FAIL", name, f"{type(exc).__name__}: {exc}".splitlines()[0]))
            raise
        ACCEPTANCE.append(("PASS", name, info["detail"]))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for status, name, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
