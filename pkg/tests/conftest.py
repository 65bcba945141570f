"""
Shared fixtures for tests.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.config import reset_budgets  # noqa: E402
from core.graph_core import Graph, complete, cycle, path  # noqa: E402
from core.graphic_functions import clear_memos  # noqa: E402


@pytest.fixture(autouse=True)
def default_budgets():
    """Every test starts and ends with the default budget table."""
    reset_budgets()
    yield
    reset_budgets()


@pytest.fixture
def fresh_functions():
    """Drop memoized graphic function values before and after a test."""
    clear_memos()
    yield
    clear_memos()


@pytest.fixture
def p3() -> Graph:
    return path(3)


@pytest.fixture
def k3() -> Graph:
    return complete(3)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def paw() -> Graph:
    """Triangle 0-1-2 with a pendant vertex 3 attached to 2."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


@pytest.fixture
def edge_list_file(tmp_path) -> Path:
    """Edge-list file describing the 4-cycle."""
    target = tmp_path / "c4.txt"
    target.write_text("4\n0 1\n1 2\n2 3\n0 3\n")
    return target
