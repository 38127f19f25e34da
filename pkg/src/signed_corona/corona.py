"""Corona product of two signed graphs and its predicted statistics.

In ``G1 ∘ G2`` every node ``u_i`` of ``G1`` receives its own copy of ``G2`` and
is joined to every node ``v_j`` of that copy by an edge of sign
``mu1(u_i) * mu2(v_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .graph import SignedGraph, adjacency, is_balanced, laplacian
from .ingest import triad_census
from .marking import MarkingVector, check_marking


@dataclass(frozen=True)
class CoronaLayout:
    """Node numbering of ``G1 ∘ G2``.

    ``G1`` node ``i`` keeps id ``i``; node ``j`` of the copy hung on ``i``
    gets ``n + j*n + i``.  Grouping copies by ``j`` makes the lower-right
    adjacency block equal ``A(G2) ⊗ I_n``.
    """

    n: int
    k: int

    @property
    def order(self) -> int:
        return self.n * (1 + self.k)

    def index(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.k):
            raise DomainError(f"({i}, {j}) outside layout {self.n}x{self.k}")
        return self.n + j * self.n + i

    def locate(self, node: int) -> tuple[int, int | None]:
        """``(i, None)`` for a G1 node, ``(i, j)`` for a copy node."""
        if not 0 <= node < self.order:
            raise DomainError(f"node {node} outside 0..{self.order - 1}")
        if node < self.n:
            return node, None
        j, i = divmod(node - self.n, self.n)
        return i, j


@dataclass(frozen=True)
class EdgeClasses:
    """Edge counts split by sign and by the marks of the two endpoints."""

    pos_pp: int = 0
    pos_pm: int = 0
    pos_mm: int = 0
    neg_pp: int = 0
    neg_pm: int = 0
    neg_mm: int = 0

    @property
    def positive(self) -> int:
        return self.pos_pp + self.pos_pm + self.pos_mm

    @property
    def negative(self) -> int:
        return self.neg_pp + self.neg_pm + self.neg_mm


def edge_classes(g: SignedGraph, mu: MarkingVector) -> EdgeClasses:
    check_marking(g, mu)
    u, v, s = g.arrays
    marks = mu.values[u] + mu.values[v]  # 2: ++, 0: +-, -2: --
    pos, neg = s == 1, s == -1
    return EdgeClasses(
        pos_pp=int(np.count_nonzero(pos & (marks == 2))),
        pos_pm=int(np.count_nonzero(pos & (marks == 0))),
        pos_mm=int(np.count_nonzero(pos & (marks == -2))),
        neg_pp=int(np.count_nonzero(neg & (marks == 2))),
        neg_pm=int(np.count_nonzero(neg & (marks == 0))),
        neg_mm=int(np.count_nonzero(neg & (marks == -2))),
    )


@dataclass(frozen=True)
class CoronaStats:
    nodes: int
    edges: int
    positive_edges: int
    negative_edges: int
    triads: tuple[int, int, int, int]
    m1_plus: int
    m1_minus: int
    m2_plus: int
    m2_minus: int
    classes: EdgeClasses

    @property
    def total_triads(self) -> int:
        return sum(self.triads)


def _check_inputs(g1, mu1, g2, mu2) -> None:
    check_marking(g1, mu1, "mu1")
    check_marking(g2, mu2, "mu2")
    if g2.node_count == 0:
        raise DomainError("second factor of a corona product must have at least one node")


def corona_product(
    g1: SignedGraph, mu1: MarkingVector, g2: SignedGraph, mu2: MarkingVector
) -> SignedGraph:
    _check_inputs(g1, mu1, g2, mu2)
    n, k = g1.node_count, g2.node_count
    u1, v1, s1 = g1.arrays
    u2, v2, s2 = g2.arrays
    base = np.arange(n, dtype=np.int64)
    # copies of G2: edge (a, b) of copy i -> (n + a*n + i, n + b*n + i)
    cu = (n + u2[:, None] * n + base[None, :]).ravel()
    cv = (n + v2[:, None] * n + base[None, :]).ravel()
    cs = np.repeat(s2, n)
    # attachment edges u_i -- copy-i v_j
    m1, m2 = mu1.values, mu2.values
    au = np.tile(base, k)
    av = n + np.repeat(np.arange(k, dtype=np.int64), n) * n + au
    as_ = np.repeat(m2, n) * np.tile(m1, k)
    return SignedGraph.from_arrays(
        n * (1 + k),
        np.concatenate([u1, cu, au]),
        np.concatenate([v1, cv, av]),
        np.concatenate([s1, cs, as_]),
    )


def predicted_edge_stats(
    g1: SignedGraph, mu1: MarkingVector, g2: SignedGraph, mu2: MarkingVector
) -> CoronaStats:
    """Edge and triad counts of ``G1 ∘ G2`` from the inputs alone."""
    _check_inputs(g1, mu1, g2, mu2)
    n1, n2 = g1.node_count, g2.node_count
    p1, q1 = mu1.plus_count, mu1.minus_count
    p2, q2 = mu2.plus_count, mu2.minus_count
    c = edge_classes(g2, mu2)
    t1 = triad_census(g1)
    t2 = triad_census(g2)
    pos = g1.positive_edge_count + n1 * g2.positive_edge_count + p1 * p2 + q1 * q2
    neg = g1.negative_edge_count + n1 * g2.negative_edge_count + p1 * q2 + q1 * p2
    new = (
        p1 * c.pos_pp + q1 * c.pos_mm,
        p1 * (c.pos_pm + c.neg_pp) + q1 * (c.pos_pm + c.neg_mm),
        p1 * (c.pos_mm + c.neg_pm) + q1 * (c.pos_pp + c.neg_pm),
        p1 * c.neg_mm + q1 * c.neg_pp,
    )
    triads = tuple(t1[j] + n1 * t2[j] + new[j] for j in range(4))
    return CoronaStats(
        nodes=n1 + n1 * n2,
        edges=g1.edge_count + n1 * g2.edge_count + n1 * n2,
        positive_edges=pos,
        negative_edges=neg,
        triads=triads,
        m1_plus=p1,
        m1_minus=q1,
        m2_plus=p2,
        m2_minus=q2,
        classes=c,
    )


@dataclass(frozen=True)
class CoronaBalance:
    status: str  # "balanced" | "unbalanced_by_inputs" | "unbalanced_by_edge_types"
    edge_types: tuple[str, ...] = ()

    @property
    def balanced(self) -> bool:
        return self.status == "balanced"


def balance_of_corona(
    g1: SignedGraph, mu1: MarkingVector, g2: SignedGraph, mu2: MarkingVector
) -> CoronaBalance:
    """Classify balance of ``G1 ∘ G2`` without building it.

    With both factors balanced the product is unbalanced exactly when ``G2``
    has (i) a positive edge between oppositely marked nodes, (ii) a negative
    edge between two positive nodes, or (iii) a negative edge between two
    negative nodes.
    """
    _check_inputs(g1, mu1, g2, mu2)
    if g1.node_count == 0:
        return CoronaBalance("balanced")  # the product has no nodes
    if not (is_balanced(g1) and is_balanced(g2)):
        return CoronaBalance("unbalanced_by_inputs")
    c = edge_classes(g2, mu2)
    found = tuple(
        tag for tag, count in (("i", c.pos_pm), ("ii", c.neg_pp), ("iii", c.neg_mm)) if count
    )
    if found:
        return CoronaBalance("unbalanced_by_edge_types", found)
    return CoronaBalance("balanced")


def kron_adjacency(
    g1: SignedGraph, mu1: MarkingVector, g2: SignedGraph, mu2: MarkingVector
) -> np.ndarray:
    """Block adjacency of ``G1 ∘ G2`` assembled from Kronecker products."""
    _check_inputs(g1, mu1, g2, mu2)
    n = g1.node_count
    off = np.kron(mu2.values[None, :].astype(float), np.diag(mu1.values.astype(float)))
    return np.block([[adjacency(g1), off], [off.T, np.kron(adjacency(g2), np.eye(n))]])


def kron_laplacian(
    g1: SignedGraph, mu1: MarkingVector, g2: SignedGraph, mu2: MarkingVector
) -> np.ndarray:
    _check_inputs(g1, mu1, g2, mu2)
    n, k = g1.node_count, g2.node_count
    off = np.kron(mu2.values[None, :].astype(float), np.diag(mu1.values.astype(float)))
    return np.block(
        [
            [laplacian(g1) + k * np.eye(n), -off],
            [-off.T, np.kron(laplacian(g2) + np.eye(k), np.eye(n))],
        ]
    )
