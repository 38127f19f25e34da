import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signed_corona.corona import (
    CoronaLayout,
    balance_of_corona,
    corona_product,
    edge_classes,
    kron_adjacency,
    kron_laplacian,
    predicted_edge_stats,
)
from signed_corona.errors import DomainError
from signed_corona.graph import SignedGraph, adjacency, degree_arrays, is_balanced, laplacian
from signed_corona.ingest import triad_census
from signed_corona.marking import canonical_marking, explicit_marking, plurality_marking

from conftest import brute_triads
from test_graph import signed_graphs

G1 = SignedGraph(3, [(0, 1, 1), (1, 2, -1)])
G2_POS = SignedGraph(2, [(0, 1, 1)])
G2_NEG = SignedGraph(2, [(0, 1, -1)])


def attachment_signs(product, layout):
    """Sign of every edge from a G1 node into its own copy, keyed (i, j)."""
    return {
        (i, j): product.sign(i, layout.index(i, j)) for i in range(layout.n) for j in range(layout.k)
    }


@st.composite
def corona_inputs(draw, max_n1=5, max_n2=4):
    g1 = draw(signed_graphs(max_n1))
    g2 = draw(signed_graphs(max_n2).filter(lambda g: g.node_count > 0))
    kind = draw(st.sampled_from(("canonical", "plurality", "explicit")))
    if kind == "canonical":
        mu1, mu2 = canonical_marking(g1), canonical_marking(g2)
    elif kind == "plurality":
        mu1, mu2 = plurality_marking(g1), plurality_marking(g2)
    else:
        pm = st.sampled_from((1, -1))
        mu1 = explicit_marking(draw(st.lists(pm, min_size=g1.node_count, max_size=g1.node_count)))
        mu2 = explicit_marking(draw(st.lists(pm, min_size=g2.node_count, max_size=g2.node_count)))
    return g1, mu1, g2, mu2


# -- layout -----------------------------------------------------------------


@pytest.mark.parametrize("n, k", [(1, 1), (3, 2), (2, 5), (4, 4)])
def test_layout_is_a_bijection(n, k):
    lay = CoronaLayout(n, k)
    ids = [lay.index(i, j) for i in range(n) for j in range(k)]
    assert sorted(ids + list(range(n))) == list(range(lay.order))
    for node in range(lay.order):
        i, j = lay.locate(node)
        assert node == (i if j is None else lay.index(i, j))
    with pytest.raises(DomainError):
        lay.index(n, 0)


# -- construction -------------------------------------------------------------


def test_canonical_product_of_path_and_edge():
    prod = corona_product(G1, canonical_marking(G1), G2_POS, canonical_marking(G2_POS))
    signs = attachment_signs(prod, CoronaLayout(3, 2))
    assert signs == {(0, 0): 1, (0, 1): 1, (1, 0): -1, (1, 1): -1, (2, 0): -1, (2, 1): -1}
    assert prod.node_count == 9 and prod.edge_count == 11


def test_plurality_product_flips_the_middle_node():
    prod = corona_product(G1, plurality_marking(G1), G2_POS, plurality_marking(G2_POS))
    signs = attachment_signs(prod, CoronaLayout(3, 2))
    assert signs[(1, 0)] == signs[(1, 1)] == 1
    assert signs[(2, 0)] == signs[(2, 1)] == -1


def test_point_times_edge_is_a_triangle():
    k1 = SignedGraph(1)
    prod = corona_product(k1, explicit_marking([1]), G2_POS, explicit_marking([1, 1]))
    assert list(prod.edges()) == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]


def test_product_input_errors():
    with pytest.raises(DomainError):
        corona_product(G1, canonical_marking(G2_POS), G2_POS, canonical_marking(G2_POS))
    with pytest.raises(DomainError):
        corona_product(G1, canonical_marking(G1), SignedGraph(0), explicit_marking([]))


@given(corona_inputs())
def test_product_structure(args):
    g1, mu1, g2, mu2 = args
    prod = corona_product(*args)
    lay = CoronaLayout(g1.node_count, g2.node_count)
    n = g1.node_count
    assert prod.node_count == lay.order
    for u, v, s in g1.edges():
        assert prod.sign(u, v) == s
    for i in range(n):
        for a, b, s in g2.edges():
            assert prod.sign(lay.index(i, a), lay.index(i, b)) == s
        for j in range(g2.node_count):
            assert prod.sign(i, lay.index(i, j)) == mu1.values[i] * mu2.values[j]
    assert prod.edge_count == g1.edge_count + n * g2.edge_count + n * g2.node_count


def test_non_commutative():
    # equal orders need equal factor sizes, so compare degree sequences
    a = SignedGraph(3, [(0, 1, 1), (1, 2, 1)])
    b = SignedGraph(3, [(0, 1, 1), (1, 2, -1), (0, 2, 1)])
    ab = corona_product(a, canonical_marking(a), b, canonical_marking(b))
    ba = corona_product(b, canonical_marking(b), a, canonical_marking(a))
    assert ab.node_count == ba.node_count == 12
    seq = lambda g: sorted(zip(*(x.tolist() for x in degree_arrays(g))))
    assert seq(ab) != seq(ba)


# -- predicted statistics -------------------------------------------------------


def test_path_times_edge_statistics():
    st_ = predicted_edge_stats(G1, canonical_marking(G1), G2_POS, canonical_marking(G2_POS))
    assert st_.edges == 2 + 3 * 1 + 3 * 2 == 11
    assert st_.positive_edges == 1 + 3 + 1 * 2 + 2 * 0 == 6
    assert st_.negative_edges == 5
    assert st_.total_triads == 0 + 3 * (0 + 1) == 3
    assert (st_.m1_plus, st_.m1_minus, st_.m2_plus, st_.m2_minus) == (1, 2, 2, 0)
    prod = corona_product(G1, canonical_marking(G1), G2_POS, canonical_marking(G2_POS))
    assert triad_census(prod) == st_.triads == (1, 0, 2, 0)


def test_edgeless_second_factor_adds_no_triads():
    tri = SignedGraph(3, [(0, 1, 1), (1, 2, -1), (0, 2, -1)])
    g2 = SignedGraph(3)
    st_ = predicted_edge_stats(tri, canonical_marking(tri), g2, canonical_marking(g2))
    assert st_.triads == triad_census(tri)


def _measured(prod):
    return prod.edge_count, prod.positive_edge_count, prod.negative_edge_count, brute_triads(prod)


@settings(max_examples=300, deadline=None)
@given(corona_inputs())
def test_predictions_equal_measurements(args):
    st_ = predicted_edge_stats(*args)
    prod = corona_product(*args)
    assert _measured(prod) == (st_.edges, st_.positive_edges, st_.negative_edges, st_.triads)
    assert st_.nodes == prod.node_count
    g1, _, g2, _ = args
    assert st_.total_triads == sum(triad_census(g1)) + g1.node_count * (
        sum(triad_census(g2)) + g2.edge_count
    )


@given(corona_inputs())
def test_edge_classes_partition(args):
    _, _, g2, mu2 = args
    c = edge_classes(g2, mu2)
    assert c.positive == g2.positive_edge_count
    assert c.negative == g2.negative_edge_count


# -- balance -----------------------------------------------------------------


def test_balance_classification_examples():
    assert balance_of_corona(G1, canonical_marking(G1), G2_POS, canonical_marking(G2_POS)).balanced
    res = balance_of_corona(G1, canonical_marking(G1), G2_NEG, canonical_marking(G2_NEG))
    assert res.status == "unbalanced_by_edge_types" and res.edge_types == ("iii",)
    assert not is_balanced(corona_product(G1, canonical_marking(G1), G2_NEG, canonical_marking(G2_NEG)))
    t1 = SignedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, -1)])
    res = balance_of_corona(t1, canonical_marking(t1), G2_POS, canonical_marking(G2_POS))
    assert res.status == "unbalanced_by_inputs"


@pytest.mark.parametrize(
    "g2, mu2, tags",
    [
        (SignedGraph(2, [(0, 1, 1)]), [1, -1], ("i",)),
        (SignedGraph(2, [(0, 1, -1)]), [1, 1], ("ii",)),
        (SignedGraph(2, [(0, 1, -1)]), [-1, -1], ("iii",)),
        (SignedGraph(2, [(0, 1, -1)]), [1, -1], ()),
        (SignedGraph(3, [(0, 1, 1), (1, 2, -1)]), [1, -1, 1], ("i",)),
    ],
)
def test_edge_type_tags(g2, mu2, tags):
    g1 = SignedGraph(1)
    res = balance_of_corona(g1, explicit_marking([1]), g2, explicit_marking(mu2))
    assert res.edge_types == tags
    assert res.balanced == (not tags)
    assert is_balanced(corona_product(g1, explicit_marking([1]), g2, explicit_marking(mu2))) == res.balanced


@settings(max_examples=300, deadline=None)
@given(corona_inputs())
def test_balance_classification_matches_construction(args):
    assert balance_of_corona(*args).balanced == is_balanced(corona_product(*args))


# -- block matrices -------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(corona_inputs())
def test_block_matrices_equal_assembled(args):
    prod = corona_product(*args)
    np.testing.assert_array_equal(adjacency(prod), kron_adjacency(*args))
    np.testing.assert_array_equal(laplacian(prod), kron_laplacian(*args))


def test_exhaustive_small_pairs():
    # all signed g1 on 3 labeled nodes with all signed g2 on 2 nodes, both markings
    pairs = list(itertools.combinations(range(3), 2))
    g1s = [
        SignedGraph(3, [(u, v, s) for (u, v), s in zip(pairs, st_) if s])
        for st_ in itertools.product((0, 1, -1), repeat=3)
    ]
    g2s = [SignedGraph(2), G2_POS, G2_NEG]
    for g1 in g1s:
        for g2 in g2s:
            for scheme in (canonical_marking, plurality_marking):
                args = (g1, scheme(g1), g2, scheme(g2))
                prod = corona_product(*args)
                st_ = predicted_edge_stats(*args)
                assert _measured(prod) == (st_.edges, st_.positive_edges, st_.negative_edges, st_.triads)
                assert balance_of_corona(*args).balanced == is_balanced(prod)
