import random

import pytest

from streamcomm import DynGraph

SEVEN_EDGES = [(1, 2), (1, 3), (2, 3), (3, 5), (5, 4), (5, 6), (6, 7), (4, 7)]


def seven_vertex_graph():
    g = DynGraph()
    for u, v in SEVEN_EDGES:
        g.add_edge(u, v)
    return g


def random_graph(rng: random.Random, n_max=30, p=None, weighted=True, loops=False):
    n = rng.randint(2, n_max)
    p = rng.uniform(0.05, 0.5) if p is None else p
    g = DynGraph()
    for v in range(n):
        g.add_vertex(v)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v, rng.choice([1.0, 2.0, 0.5, 3.0]) if weighted else 1.0)
        if loops and rng.random() < 0.1:
            g.add_edge(u, u, rng.choice([1.0, 2.0]))
    return g


def random_partition(rng: random.Random, g, k=None):
    vs = g.vertices()
    k = k or rng.randint(1, max(1, len(vs)))
    return {v: rng.randrange(k) for v in vs}


@pytest.fixture
def seven():
    return seven_vertex_graph()


ACCEPTANCE_LINES = {}


def report(criterion, ok, detail=""):
    """Record and print one acceptance line; the summary hook repeats them at the end."""
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
    ACCEPTANCE_LINES[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
