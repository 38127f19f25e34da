"""Simple undirected signed graphs, degree queries, balance and matrices.

Node ids are dense integers ``0..node_count-1``.  Edges are stored once, as
``(u, v, sign)`` with ``u < v`` and ``sign`` in ``{+1, -1}``, sorted
lexicographically.  A :class:`SignedGraph` is immutable once built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import DomainError

__all__ = [
    "SignedGraph",
    "DegreeProfile",
    "degrees",
    "degree_arrays",
    "net_regularity",
    "is_balanced",
    "balance_partition",
    "is_connected",
    "adjacency",
    "laplacian",
    "signless_laplacian",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class SignedGraph:
    """A simple undirected graph whose edges carry a sign in ``{+1, -1}``.

    >>> g = SignedGraph(3, [(0, 1, 1), (2, 1, -1)])
    >>> list(g.edges())
    [(0, 1, 1), (1, 2, -1)]
    """

    __slots__ = ("_n", "_u", "_v", "_s", "_adj")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int, int]] = ()):
        rows = [tuple(e) for e in edges]
        if rows:
            arr = np.asarray(rows, dtype=np.int64)
            if arr.ndim != 2 or arr.shape[1] != 3:
                raise DomainError("edges must be (u, v, sign) triples")
            u, v, s = arr[:, 0], arr[:, 1], arr[:, 2]
        else:
            u = v = s = np.empty(0, dtype=np.int64)
        self._init(int(node_count), u, v, s)

    @classmethod
    def from_arrays(cls, node_count: int, u, v, s) -> "SignedGraph":
        """Build from parallel arrays; endpoints may be in either order."""
        g = cls.__new__(cls)
        g._init(
            int(node_count),
            np.asarray(u, dtype=np.int64),
            np.asarray(v, dtype=np.int64),
            np.asarray(s, dtype=np.int64),
        )
        return g

    def _init(self, n: int, u: np.ndarray, v: np.ndarray, s: np.ndarray) -> None:
        if n < 0:
            raise DomainError(f"node_count must be non-negative, got {n}")
        if not (u.shape == v.shape == s.shape) or u.ndim != 1:
            raise DomainError("edge arrays must be one-dimensional and equally long")
        if u.size:
            if np.any(u == v):
                bad = int(u[np.argmax(u == v)])
                raise DomainError(f"self-loop at node {bad}")
            lo, hi = np.minimum(u, v), np.maximum(u, v)
            if lo.min() < 0 or hi.max() >= n:
                raise DomainError(f"edge endpoint outside 0..{n - 1}")
            if not np.all((s == 1) | (s == -1)):
                raise DomainError("edge signs must be +1 or -1")
            key = lo * n + hi
            order = np.argsort(key, kind="stable")
            key = key[order]
            if np.any(key[1:] == key[:-1]):
                dup = int(np.argmax(key[1:] == key[:-1]))
                raise DomainError(
                    f"duplicate edge ({int(lo[order][dup])}, {int(hi[order][dup])})"
                )
            u, v, s = lo[order], hi[order], s[order]
        self._n = n
        self._u = _readonly(np.ascontiguousarray(u))
        self._v = _readonly(np.ascontiguousarray(v))
        self._s = _readonly(np.ascontiguousarray(s))
        self._adj = None

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return int(self._u.size)

    @property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Read-only ``(u, v, sign)`` arrays with ``u < v``."""
        return self._u, self._v, self._s

    @property
    def positive_edge_count(self) -> int:
        return int(np.count_nonzero(self._s == 1))

    @property
    def negative_edge_count(self) -> int:
        return int(np.count_nonzero(self._s == -1))

    def edges(self) -> Iterator[tuple[int, int, int]]:
        return zip(self._u.tolist(), self._v.tolist(), self._s.tolist())

    def adjacency_index(self) -> list[dict[int, int]]:
        """Per-node ``{neighbor: sign}`` maps, built once on first use."""
        if self._adj is None:
            adj: list[dict[int, int]] = [{} for _ in range(self._n)]
            for a, b, sg in self.edges():
                adj[a][b] = sg
                adj[b][a] = sg
            self._adj = adj
        return self._adj

    def neighbors(self, u: int) -> dict[int, int]:
        self._check_node(u)
        return self.adjacency_index()[u]

    def sign(self, u: int, v: int) -> int:
        """Sign of edge ``{u, v}``, or 0 when absent."""
        return self.neighbors(u).get(v, 0)

    def negated(self) -> "SignedGraph":
        """Same edges with every sign flipped."""
        return SignedGraph.from_arrays(self._n, self._u, self._v, -self._s)

    def relabeled(self, perm) -> "SignedGraph":
        """Graph with node ``i`` renamed to ``perm[i]``."""
        p = np.asarray(perm, dtype=np.int64)
        if p.shape != (self._n,) or not np.array_equal(np.sort(p), np.arange(self._n)):
            raise DomainError("perm must be a permutation of 0..node_count-1")
        return SignedGraph.from_arrays(self._n, p[self._u], p[self._v], self._s)

    def _check_node(self, u: int) -> None:
        if not 0 <= u < self._n:
            raise DomainError(f"node id {u} outside 0..{self._n - 1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._u, other._u)
            and np.array_equal(self._v, other._v)
            and np.array_equal(self._s, other._s)
        )

    def __hash__(self) -> int:
        return hash((self._n, self._u.tobytes(), self._v.tobytes(), self._s.tobytes()))

    def __repr__(self) -> str:
        return (
            f"SignedGraph(nodes={self._n}, edges={self.edge_count}, "
            f"+{self.positive_edge_count}/-{self.negative_edge_count})"
        )


@dataclass(frozen=True)
class DegreeProfile:
    positive: int
    negative: int

    @property
    def total(self) -> int:
        return self.positive + self.negative

    @property
    def net(self) -> int:
        return self.positive - self.negative

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.positive, self.negative, self.total, self.net)


def degree_arrays(g: SignedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Positive and negative degree of every node."""
    u, v, s = g.arrays
    n = g.node_count
    pos = np.bincount(u[s == 1], minlength=n) + np.bincount(v[s == 1], minlength=n)
    neg = np.bincount(u[s == -1], minlength=n) + np.bincount(v[s == -1], minlength=n)
    return pos.astype(np.int64), neg.astype(np.int64)


def degrees(g: SignedGraph, u: int) -> DegreeProfile:
    nbrs = g.neighbors(u)
    neg = sum(1 for sg in nbrs.values() if sg < 0)
    return DegreeProfile(positive=len(nbrs) - neg, negative=neg)


def net_regularity(g: SignedGraph) -> int | None:
    """Common net degree ``d+ - d-`` of all nodes, or None if they differ.

    The empty graph (no nodes) has no net-regularity.
    """
    if g.node_count == 0:
        return None
    pos, neg = degree_arrays(g)
    net = pos - neg
    if np.all(net == net[0]):
        return int(net[0])
    return None


def balance_partition(g: SignedGraph) -> np.ndarray | None:
    """A +/-1 side for every node with positive edges inside sides and negative
    edges across, or None when no such split exists (graph unbalanced)."""
    adj = g.adjacency_index()
    side = np.zeros(g.node_count, dtype=np.int64)
    for root in range(g.node_count):
        if side[root]:
            continue
        side[root] = 1
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, sg in adj[a].items():
                want = side[a] * sg
                if side[b] == 0:
                    side[b] = want
                    queue.append(b)
                elif side[b] != want:
                    return None
    return side


def is_balanced(g: SignedGraph) -> bool:
    return balance_partition(g) is not None


def is_connected(g: SignedGraph) -> bool:
    n = g.node_count
    if n == 0:
        return False
    adj = g.adjacency_index()
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == n


def adjacency(g: SignedGraph) -> np.ndarray:
    n = g.node_count
    u, v, s = g.arrays
    a = np.zeros((n, n))
    a[u, v] = s
    a[v, u] = s
    return a


def laplacian(g: SignedGraph) -> np.ndarray:
    """Signed Laplacian ``D - A`` with ``D`` the total-degree diagonal."""
    a = adjacency(g)
    return np.diag(np.abs(a).sum(axis=1)) - a


def signless_laplacian(g: SignedGraph) -> np.ndarray:
    a = adjacency(g)
    return np.diag(np.abs(a).sum(axis=1)) + a
