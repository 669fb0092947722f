import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st

from perronbound import kernels
from perronbound.graph import Graph


def path_eigenpair(n):
    """Closed-form top eigenpair of the path P_n: 2cos(pi/(n+1)), sin profile."""
    rho = 2 * math.cos(math.pi / (n + 1))
    x = np.array([math.sin(j * math.pi / (n + 1)) for j in range(1, n + 1)])
    return rho, x / np.linalg.norm(x)


def star_eigenpair(n):
    """Closed-form top eigenpair of K_{1,n-1}, center first."""
    x = np.full(n, 1 / math.sqrt(2 * (n - 1)))
    x[0] = 1 / math.sqrt(2)
    return math.sqrt(n - 1), x


def brute_force_connected_count(n):
    """Count connected labelled graphs by filtering all 2^(n(n-1)/2) edge sets with networkx."""
    pairs = list(itertools.combinations(range(n), 2))
    count = 0
    for keep in itertools.product((0, 1), repeat=len(pairs)):
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(p for p, k in zip(pairs, keep) if k)
        count += nx.is_connected(h)
    return count


def to_nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, tuple(p for p, k in zip(pairs, keep) if k))


@st.composite
def connected_graphs(draw, min_n=2, max_n=9):
    # random spanning tree plus extra edges keeps every draw connected
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges.update(p for p, k in zip(pairs, extra) if k)
    perm = draw(st.permutations(range(n)))
    return Graph(n, tuple((perm[a], perm[b]) for a, b in edges))


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    """Each importable kernel backend module in turn."""
    return kernels.backends()[request.param]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
