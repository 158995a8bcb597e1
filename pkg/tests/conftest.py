import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
