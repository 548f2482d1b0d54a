import json
import logging
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def golden():
    return json.loads((DATA / "golden_exact1d.json").read_text())


@pytest.fixture(autouse=True)
def _quiet_mesh_warnings(caplog):
    caplog.set_level(logging.ERROR, logger="filmthick.mesh")


@pytest.fixture
def record():
    """Collect one summary line per acceptance criterion."""
    def _record(label, passed, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
