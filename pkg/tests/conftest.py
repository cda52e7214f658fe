import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the summary."""

    def record(number, title, passed, detail=""):
        ACCEPTANCE[number] = (title, passed, detail)
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}"
        print(line + (f"  [{detail}]" if detail else ""))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        line = f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
