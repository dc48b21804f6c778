import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxalg import load_spec  # noqa: E402

SPECS = Path(__file__).resolve().parent.parent / "ringspecs"


@pytest.fixture(scope="session")
def spec():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_spec(SPECS / f"{name}.json")
        return cache[name]

    return get


# one line per acceptance criterion, collected by tests/test_acceptance.py
CRITERIA = []


def record(criterion, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail}"
    CRITERIA.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
