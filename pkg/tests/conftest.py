import pytest


class _AcceptanceLog:
    """Collects one line per acceptance criterion for the end-of-run summary."""

    def __init__(self) -> None:
        self.lines: list[str] = []

    def __call__(self, name: str, detail: str) -> None:
        self.lines.append(f"[PASS] {name}: {detail}")


_log = _AcceptanceLog()


@pytest.fixture
def acceptance_report() -> _AcceptanceLog:
    return _log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _log.lines:
        terminalreporter.section("acceptance criteria")
        for line in _log.lines:
            terminalreporter.line(line)
