import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line ``PASS|FAIL <id> <title>: <detail>``."""

    def record(cid: str, title: str, passed: bool, detail: str) -> None:
        line = f"{'PASS' if passed else 'FAIL'} {cid} {title}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
