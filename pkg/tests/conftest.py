import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chipfire import Digraph  # noqa: E402

SIX_EDGES = [(1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3),
               (4, 1), (1, 4), (3, 5), (4, 6), (5, 6), (6, 5)]
SIX_X = (1, 1, 0, 0, 1, 0)
SIX_Y = (0, 0, 1, 1, 1, 0)


def six_graph() -> Digraph:
    return Digraph.from_edges(6, [(a - 1, b - 1) for a, b in SIX_EDGES])


@pytest.fixture
def triangle():
    return Digraph(((0, 1, 0), (0, 0, 1), (1, 0, 0)))


@pytest.fixture
def doubled():
    return Digraph(((0, 2), (2, 0)))


@pytest.fixture
def two_cycle():
    return Digraph(((0, 1), (1, 0)))


@pytest.fixture
def lopsided():
    """u -> v once, v -> u twice."""
    return Digraph(((0, 1), (2, 0)))


@pytest.fixture
def path2():
    return Digraph(((0, 1), (0, 0)))


@pytest.fixture
def six():
    return six_graph()


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(label, ok, detail)."""
    def record(label: str, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.append((label, ok, detail))
        print(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {label}: {detail}")
