import random

import pytest
from hypothesis import strategies as st

from superdom.graph import Graph


def prufer_tree(seq, n):
    """Decode a Prüfer sequence into a tree on ``n`` vertices."""
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph(n, edges)


@st.composite
def trees(draw, min_n=2, max_n=12):
    n = draw(st.integers(min_n, max_n))
    seq = draw(st.lists(st.integers(0, n - 1), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))
    return prufer_tree(seq, n)


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
