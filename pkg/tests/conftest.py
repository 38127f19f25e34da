import functools
import itertools

import networkx as nx
import numpy as np
import pytest

from signed_corona.graph import SignedGraph, adjacency, is_connected


def cycle4_one_negative():
    return SignedGraph(4, [(0, 1, -1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])


def k4_one_negative():
    return SignedGraph(4, [(0, 1, -1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])


def fixed_point_seed():
    """Positive 4-cycle with both diagonals negative: every node has d^- = 1."""
    return SignedGraph(
        4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, -1), (1, 3, -1)]
    )


def negative_triangle():
    return SignedGraph(3, [(0, 1, -1), (1, 2, -1), (0, 2, -1)])


def all_pairs(n):
    return list(itertools.combinations(range(n), 2))


def labeled_signed_graphs(n):
    """Every simple signed graph on nodes ``0..n-1`` (3^(n choose 2) of them)."""
    pairs = all_pairs(n)
    for states in itertools.product((0, 1, -1), repeat=len(pairs)):
        yield SignedGraph(n, [(u, v, s) for (u, v), s in zip(pairs, states) if s])


def atlas_graphs(n_max, connected=None):
    """Unlabeled simple graphs up to ``n_max`` nodes, as edge lists."""
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > n_max:
            continue
        if connected is not None and n > 0 and nx.is_connected(h) != connected:
            continue
        out.append((n, sorted(tuple(sorted(e)) for e in h.edges())))
    return out


def sign_patterns(n, edges):
    for signs in itertools.product((1, -1), repeat=len(edges)):
        yield SignedGraph(n, [(u, v, s) for (u, v), s in zip(edges, signs)])


def connected_signed_seeds(n_max):
    """Every connected seed on up to ``n_max`` nodes, one per sign pattern per
    unlabeled underlying graph."""
    for n, edges in atlas_graphs(n_max, connected=True):
        yield from sign_patterns(n, edges)


def random_signed_graph(rng, n, p=0.5, q=0.5, connected=False):
    while True:
        edges = [
            (u, v, 1 if rng.random() >= q else -1)
            for u, v in itertools.combinations(range(n), 2)
            if rng.random() < p
        ]
        g = SignedGraph(n, edges)
        if not connected or is_connected(g):
            return g


@functools.lru_cache(maxsize=None)
def _triples(n):
    return np.array(list(itertools.combinations(range(n), 3)), dtype=np.int64).reshape(-1, 3)


def brute_triads(g):
    """Triangle census over all node triples."""
    a = adjacency(g)
    t = _triples(g.node_count)
    s = np.stack([a[t[:, 0], t[:, 1]], a[t[:, 1], t[:, 2]], a[t[:, 0], t[:, 2]]], axis=1)
    closed = np.all(s != 0, axis=1)
    neg = np.count_nonzero(s[closed] < 0, axis=1)
    return tuple(int(np.count_nonzero(neg == j)) for j in range(4))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
