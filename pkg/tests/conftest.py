import pytest

_CRITERION_LINES = []


@pytest.fixture(scope="session")
def criterion():
    """Record one pass/fail line per acceptance criterion, then assert."""

    def record(label, ok, detail=""):
        tag = "PASS" if ok else "FAIL"
        line = f"[{tag}] {label}" + (f": {detail}" if detail else "")
        _CRITERION_LINES.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
