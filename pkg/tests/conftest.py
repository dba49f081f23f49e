import json
from pathlib import Path

import pytest

from gwtrop.fields import parse_field
from gwtrop.tropical import EnrichedHypersurface

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"

_ACCEPTANCE: dict = {}


def load_problem(name: str, field: str | None = None):
    data = json.loads((PROBLEMS / f"{name}.json").read_text())
    f = parse_field(field or data["field"])
    return f, [EnrichedHypersurface.from_json(h, f) for h in data["hypersurfaces"]]


@pytest.fixture
def acceptance():
    """Record one verdict line per acceptance criterion; printed at session end."""

    def record(number: int, passed: bool, detail: str):
        _ACCEPTANCE[number] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} | {detail}")
