import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    """Record one PASS/FAIL line for the terminal summary, then return whether it passed."""

    def record(name: str, ok: bool, seconds: float, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {name}  [{seconds:.3f} s]"
        if detail:
            line += f"  {detail}"
        ACCEPTANCE_LINES.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
