import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from parahecke.zspace import ZContext  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def report():
    def record(num: int, ok: bool, detail: str):
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


_contexts: dict = {}


def context(n: int, q: int) -> ZContext:
    if (n, q) not in _contexts:
        _contexts[n, q] = ZContext(n, q, force=True)
    return _contexts[n, q]


@pytest.fixture(scope="session")
def ctx22():
    return context(2, 2)


@pytest.fixture(scope="session")
def ctx23():
    return context(2, 3)
