from __future__ import annotations

# (verdict, criterion, detail) lines collected by the acceptance suite
ACCEPTANCE_LINES: list[tuple[str, str, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for verdict, name, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{verdict:4s}  {name}: {detail}")
