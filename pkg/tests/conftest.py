import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary prints them in numeric order."""
    def record(num: int, ok: bool, detail: str) -> None:
        _CRITERIA[num] = (ok, detail)
        print(f"CRITERION {num:2d} {'PASS' if ok else 'FAIL'}: {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok, detail = _CRITERIA[num]
        terminalreporter.write_line(f"CRITERION {num:2d} {'PASS' if ok else 'FAIL'}: {detail}")
