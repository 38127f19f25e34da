"""Explicit construction of corona graphs ``G^(m) = G^(m-1) ∘ G``."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from ..corona import corona_product
from ..errors import DomainError, ResourceError
from ..graph import SignedGraph, is_connected
from ..marking import canonical_marking

DEFAULT_NODE_BUDGET = 10**7
BUDGET_ENV = "CORONA_NODE_BUDGET"


def node_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_NODE_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise DomainError(f"{BUDGET_ENV}={raw!r} is not a number") from None
    if value < 1:
        raise DomainError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def growth_order(n: int, m: int) -> int:
    return n * (n + 1) ** m


def check_budget(n: int, m: int, budget: int | None = None) -> None:
    cap = node_budget() if budget is None else budget
    size = growth_order(n, m)
    if size > cap:
        raise ResourceError(
            f"G^({m}) of a {n}-node seed has {size} nodes, over the budget of {cap} "
            f"(raise it with {BUDGET_ENV})"
        )


def _check_seed(seed: SignedGraph, m: int) -> None:
    if m < 0:
        raise DomainError(f"number of steps must be non-negative, got {m}")
    if seed.node_count == 0:
        raise DomainError("seed graph must have at least one node")
    if not is_connected(seed):
        raise DomainError("seed graph must be connected")


@dataclass(frozen=True)
class GrowthMetadata:
    """Per-node provenance of an explicitly grown graph.

    ``birth_step`` is 0 for seed nodes.  For a node born at step ``i``,
    ``seed_node`` is the seed node it copies, ``parent`` the node of
    ``G^(i-1)`` it was attached to and ``attach_mark`` that parent's marking
    at the time.  Seed nodes have ``seed_node`` equal to their own id,
    ``parent = -1`` and ``attach_mark = 0``.
    """

    birth_step: np.ndarray
    seed_node: np.ndarray
    parent: np.ndarray
    attach_mark: np.ndarray


def grow_with_metadata(
    seed: SignedGraph, m: int, budget: int | None = None
) -> tuple[SignedGraph, GrowthMetadata]:
    _check_seed(seed, m)
    n = seed.node_count
    check_budget(n, m, budget)
    mu0 = canonical_marking(seed)
    g = seed
    birth = np.zeros(n, dtype=np.int64)
    origin = np.arange(n, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    attach = np.zeros(n, dtype=np.int64)
    for step in range(1, m + 1):
        cur = g.node_count
        mu = canonical_marking(g)
        g = corona_product(g, mu, seed, mu0)
        # new node n_cur + j*n_cur + i copies seed node j and hangs on node i
        birth = np.concatenate([birth, np.full(cur * n, step, dtype=np.int64)])
        origin = np.concatenate([origin, np.repeat(np.arange(n, dtype=np.int64), cur)])
        parents = np.tile(np.arange(cur, dtype=np.int64), n)
        parent = np.concatenate([parent, parents])
        attach = np.concatenate([attach, mu.values[parents]])
    return g, GrowthMetadata(birth, origin, parent, attach)


def grow(seed: SignedGraph, m: int, budget: int | None = None) -> SignedGraph:
    """Iterate ``G^(i) = G^(i-1) ∘ seed`` ``m`` times with canonical markings."""
    return grow_with_metadata(seed, m, budget)[0]
