from itertools import permutations
from math import perm

import pytest

from rainbow_lab.graphs import Graph


def brute_rainbow_copies(h: Graph, n: int, color) -> int:
    """Rainbow labelled embeddings divided by |Aut(h)|, all in plain Python."""
    edge_set = set(h.edges)
    aut = sum(
        1 for p in permutations(range(h.n_vertices))
        if {(min(p[u], p[v]), max(p[u], p[v])) for u, v in h.edges} == edge_set
    )
    hits = 0
    for phi in permutations(range(n), h.n_vertices):
        cols = [color(phi[u], phi[v]) for u, v in h.edges]
        if len(set(cols)) == len(cols):
            hits += 1
    assert hits % aut == 0
    return hits // aut


def spin_integral(n_vertices: int, edge_subset) -> float:
    """(1/2^v) sum over z in {-1,+1}^v of prod over edges z_u z_v."""
    from itertools import product

    total = 0
    for z in product((-1, 1), repeat=n_vertices):
        term = 1
        for u, v in edge_subset:
            term *= z[u] * z[v]
        total += term
    return total / 2**n_vertices


@pytest.fixture
def k4_pendant():
    return Graph.complete(4).with_pendant()


__all__ = ["brute_rainbow_copies", "spin_integral", "perm"]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
