import io

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signed_corona.errors import DomainError, ParseError
from signed_corona.graph import (
    SignedGraph,
    adjacency,
    balance_partition,
    degree_arrays,
    degrees,
    is_balanced,
    is_connected,
    laplacian,
    net_regularity,
    signless_laplacian,
)
from signed_corona.sgformat import format_sg, parse_sg, read_sg, write_sg

from conftest import atlas_graphs


@st.composite
def signed_graphs(draw, max_nodes=8):
    n = draw(st.integers(0, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    states = draw(st.lists(st.sampled_from((0, 1, -1)), min_size=len(pairs), max_size=len(pairs)))
    return SignedGraph(n, [(u, v, s) for (u, v), s in zip(pairs, states) if s])


# -- construction -------------------------------------------------------------


def test_edges_are_normalized_and_sorted():
    g = SignedGraph(4, [(3, 0, -1), (2, 1, 1), (0, 1, 1)])
    assert list(g.edges()) == [(0, 1, 1), (0, 3, -1), (1, 2, 1)]
    assert g.sign(3, 0) == g.sign(0, 3) == -1
    assert g.sign(2, 3) == 0


@pytest.mark.parametrize(
    "edges, match",
    [
        ([(0, 0, 1)], "self-loop"),
        ([(0, 1, 1), (1, 0, -1)], "duplicate"),
        ([(0, 3, 1)], "outside"),
        ([(0, 1, 2)], "signs"),
        ([(0, 1)], "triples"),
    ],
)
def test_rejects_non_simple_input(edges, match):
    with pytest.raises(DomainError, match=match):
        SignedGraph(3, edges)


def test_graph_is_immutable():
    g = SignedGraph(2, [(0, 1, 1)])
    u, _, _ = g.arrays
    with pytest.raises(ValueError):
        u[0] = 1


@given(signed_graphs())
def test_adjacency_index_matches_edge_set(g):
    from_index = {
        (min(a, b), max(a, b), s) for a, nbrs in enumerate(g.adjacency_index()) for b, s in nbrs.items()
    }
    assert from_index == set(g.edges())
    assert sum(len(nbrs) for nbrs in g.adjacency_index()) == 2 * g.edge_count


# -- degrees ----------------------------------------------------------------


@pytest.mark.parametrize(
    "g, node, expected",
    [
        (SignedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]), 0, (2, 0, 2, 2)),
        (SignedGraph(3, [(0, 1, 1), (0, 2, -1), (1, 2, -1)]), 2, (0, 2, 2, -2)),
        (SignedGraph(2), 1, (0, 0, 0, 0)),
    ],
)
def test_degrees(g, node, expected):
    assert degrees(g, node).as_tuple() == expected


def test_degrees_rejects_bad_node():
    with pytest.raises(DomainError):
        degrees(SignedGraph(2), 2)


@given(signed_graphs())
def test_degree_sums(g):
    pos, neg = degree_arrays(g)
    assert int((pos + neg).sum()) == 2 * g.edge_count
    assert int((pos - neg).sum()) == 2 * (g.positive_edge_count - g.negative_edge_count)
    for u in range(g.node_count):
        d = degrees(g, u)
        assert d.total == d.positive + d.negative
        assert d.net == d.positive - d.negative
        assert (d.positive, d.negative) == (pos[u], neg[u])


@pytest.mark.parametrize(
    "g, expected",
    [
        (SignedGraph(2, [(0, 1, 1)]), 1),
        (SignedGraph(3, [(0, 1, 1), (1, 2, -1)]), None),
        (SignedGraph(2, [(0, 1, -1)]), -1),
        (SignedGraph(0), None),
    ],
)
def test_net_regularity(g, expected):
    assert net_regularity(g) == expected


@given(signed_graphs())
def test_net_degree_is_adjacency_eigenvalue_of_ones(g):
    d = net_regularity(g)
    if d is not None:
        ones = np.ones(g.node_count)
        np.testing.assert_array_equal(adjacency(g) @ ones, d * ones)


# -- balance ----------------------------------------------------------------


@pytest.mark.parametrize(
    "g, expected",
    [
        (SignedGraph(3, [(0, 1, 1), (0, 2, -1), (1, 2, -1)]), True),
        (SignedGraph(3, [(0, 1, 1), (0, 2, 1), (1, 2, -1)]), False),
        (SignedGraph(3, [(0, 1, -1), (0, 2, -1), (1, 2, -1)]), False),
        (SignedGraph(3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]), True),
        (SignedGraph(0), True),
    ],
)
def test_balance_of_triads(g, expected):
    assert is_balanced(g) is expected


@given(st.integers(1, 12), st.data())
def test_forests_are_balanced(n, data):
    edges = []
    for v in range(1, n):
        if data.draw(st.booleans()):
            parent = data.draw(st.integers(0, v - 1))
            edges.append((parent, v, data.draw(st.sampled_from((1, -1)))))
    assert is_balanced(SignedGraph(n, edges))


@given(signed_graphs())
def test_balance_partition_is_a_witness(g):
    side = balance_partition(g)
    if side is not None:
        for u, v, s in g.edges():
            assert side[u] * side[v] == s


def _cycle_masks(n, edges):
    index = {e: i for i, e in enumerate(edges)}
    h = nx.Graph(edges)
    h.add_nodes_from(range(n))
    masks = []
    for cyc in nx.simple_cycles(h):
        mask = 0
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            mask |= 1 << index[(min(a, b), max(a, b))]
        masks.append(mask)
    return masks


def _popcount_parity(x: np.ndarray) -> np.ndarray:
    parity = np.zeros_like(x)
    while np.any(x):
        parity ^= x & 1
        x = x >> 1
    return parity


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_balance_matches_cycle_enumeration(n):
    # every unlabeled graph on n nodes, every sign pattern
    checked = 0
    for nodes, edges in atlas_graphs(n):
        if nodes != n:
            continue
        k = len(edges)
        masks = _cycle_masks(n, edges)
        negatives = np.arange(2**k, dtype=np.int64)
        expected = np.ones(2**k, dtype=bool)
        for c in masks:
            expected &= _popcount_parity(negatives & c) == 0
        for pattern in range(2**k):
            g = SignedGraph(n, [(u, v, -1 if pattern >> i & 1 else 1) for i, (u, v) in enumerate(edges)])
            assert is_balanced(g) == bool(expected[pattern]), (edges, pattern)
            checked += 1
    assert checked > 0


def test_is_connected():
    assert is_connected(SignedGraph(1))
    assert not is_connected(SignedGraph(0))
    assert not is_connected(SignedGraph(3, [(0, 1, 1)]))
    assert is_connected(SignedGraph(3, [(0, 1, 1), (1, 2, -1)]))


# -- matrices ---------------------------------------------------------------


def test_k2_matrices():
    pos = SignedGraph(2, [(0, 1, 1)])
    neg = SignedGraph(2, [(0, 1, -1)])
    np.testing.assert_array_equal(adjacency(pos), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(laplacian(pos), [[1, -1], [-1, 1]])
    np.testing.assert_array_equal(laplacian(neg), [[1, 1], [1, 1]])
    np.testing.assert_allclose(np.linalg.eigvalsh(laplacian(neg)), [0, 2], atol=1e-12)
    np.testing.assert_array_equal(signless_laplacian(pos), laplacian(neg))


def test_negative_triangle_laplacian_is_definite():
    g = SignedGraph(3, [(0, 1, -1), (1, 2, -1), (0, 2, -1)])
    assert np.linalg.eigvalsh(laplacian(g))[0] > 0.5


def test_laplacian_psd_on_random_vectors(rng):
    for _ in range(20):
        n = int(rng.integers(2, 12))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = SignedGraph(n, [(u, v, int(rng.choice((1, -1)))) for u, v in pairs])
        lap = laplacian(g)
        assert np.array_equal(lap, lap.T)
        xs = rng.normal(size=(50, n))
        assert np.all(np.einsum("ij,jk,ik->i", xs, lap, xs) >= -1e-9)


@given(signed_graphs())
def test_laplacian_quadratic_form_is_edge_sum(g):
    x = np.arange(1, g.node_count + 1, dtype=float)
    expected = sum((x[u] - s * x[v]) ** 2 for u, v, s in g.edges())
    assert x @ laplacian(g) @ x == pytest.approx(expected)


# -- .sg format ---------------------------------------------------------------


@given(signed_graphs())
@settings(max_examples=50)
def test_sg_round_trip(g):
    text = format_sg(g)
    assert parse_sg(text.splitlines()) == g


def test_sg_accepts_symbolic_signs_and_infers_size():
    g = parse_sg(["# a comment", "0 1 +", "1 2 -", "2 3 +1", "", "0 3 -1"])
    assert g.node_count == 4
    assert list(g.edges()) == [(0, 1, 1), (0, 3, -1), (1, 2, -1), (2, 3, 1)]


def test_sg_header_keeps_isolated_nodes(tmp_path):
    g = SignedGraph(5, [(0, 1, -1)])
    path = tmp_path / "g.sg"
    write_sg(g, path, comment="two isolated")
    assert read_sg(path) == g
    buf = io.StringIO()
    write_sg(g, buf)
    buf.seek(0)
    assert read_sg(buf) == g


@pytest.mark.parametrize("line", ["0 1", "0 1 2", "a 1 +", "0 0 +"])
def test_sg_errors_name_the_line(line):
    with pytest.raises((ParseError, DomainError)) as info:
        parse_sg(["0 1 +", line])
    if isinstance(info.value, ParseError):
        assert "2" in str(info.value)
