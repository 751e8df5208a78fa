import pytest

_LINES: list[str] = []


@pytest.fixture
def report_line():
    """Record one pass/fail line; all of them are repeated in the terminal summary."""

    def record(line: str) -> None:
        print(line)
        _LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
