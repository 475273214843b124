import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion: ``acceptance(tag, ok, detail)``."""

    def record(tag: str, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE[tag] = (bool(ok), detail)
        print(f"{tag} {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_ACCEPTANCE, key=lambda s: int(s.split("-")[1])):
        ok, detail = _ACCEPTANCE[tag]
        terminalreporter.write_line(f"{tag} {'PASS' if ok else 'FAIL'} {detail}")
