"""Positive/negative degrees of nodes of ``G^(m)`` and degree distributions.

``table_seed_degree`` and ``table_born_degree`` transcribe the parity-cased
tables cell by cell.  ``simulated_degree`` follows one node through the
marking flips step by step.  ``divergence_report`` compares both against
degrees measured on an explicitly grown graph.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, UnsupportedHypothesis
from ..graph import DegreeProfile, SignedGraph, degree_arrays
from ..marking import canonical_marking
from .counts import marked_count_sequence, SeedProfile
from .generate import grow_with_metadata


def _half(x: int) -> int:
    if x % 2:
        raise ArithmeticError("odd value in a half-integer table cell")
    return x // 2


def table_seed_degree(
    n_plus: int, n_minus: int, d0p: int, d0m: int, mark: int, m: int
) -> tuple[int, int]:
    """Degrees in ``G^(m)`` of a seed node with seed marking ``mark``.

    The table covers ``m >= 1``; ``G^(0)`` is the seed itself.
    """
    if m == 0:
        return d0p, d0m
    p_odd, q_odd = n_plus % 2 == 1, n_minus % 2 == 1
    if p_odd and q_odd:
        if m % 2 == 0:
            h = _half(m) * (n_plus + n_minus)
            return d0p + h, d0m + h
        a, b = _half(m + 1), _half(m - 1)
        if mark > 0:
            return d0p + a * n_plus + b * n_minus, d0m + a * n_minus + b * n_plus
        return d0p + a * n_minus + b * n_plus, d0m + a * n_plus + b * n_minus
    if not p_odd and q_odd:
        if mark > 0:
            return d0p + n_plus + (m - 1) * n_minus, d0m + n_minus + (m - 1) * n_plus
        return d0p + m * n_minus, d0m + m * n_plus
    if not p_odd and not q_odd:
        if mark > 0:
            return d0p + m * n_plus, d0m + m * n_minus
        return d0p + m * n_minus, d0m + m * n_plus
    if mark > 0:
        return d0p + m * n_plus, d0m + m * n_minus
    return d0p + n_minus + (m - 1) * n_plus, d0m + n_plus + (m - 1) * n_minus


def table_born_degree(
    n_plus: int, n_minus: int, d0p: int, d0m: int, attach: int, mu0: int, m: int, i: int
) -> tuple[int, int]:
    """Degrees in ``G^(m)`` of a copy of a seed node born at step ``i``.

    ``attach`` is the marking of the node it hangs on, ``mu0`` its marking
    inside the seed.
    """
    n = n_plus + n_minus
    r = m - i
    p_odd, q_odd = n_plus % 2 == 1, n_minus % 2 == 1
    plus_edge = attach == mu0  # sign of the birth edge
    bp, bm = (1, 0) if plus_edge else (0, 1)
    if p_odd and q_odd:
        if r % 2 == 0:
            h = _half(r) * n
            return d0p + bp + h, d0m + bm + h
        a, b = _half(r + 1), _half(r - 1)
        if attach > 0:
            return d0p + bp + a * n_plus + b * n_minus, d0m + bm + a * n_minus + b * n_plus
        return d0p + bp + a * n_minus + b * n_plus, d0m + bm + a * n_plus + b * n_minus
    if not p_odd and q_odd:
        if attach > 0:
            if r == 0:
                return d0p + bp, d0m + bm
            return d0p + bp + n_plus + (r - 1) * n_minus, d0m + bm + n_minus + (r - 1) * n_plus
        return d0p + bp + r * n_minus, d0m + bm + r * n_plus
    if not p_odd and not q_odd:
        if attach > 0:
            return d0p + bp + r * n_plus, d0m + bm + r * n_minus
        return d0p + bp + r * n_minus, d0m + bm + r * n_plus
    if attach > 0:
        return d0p + bp + r * n_plus, d0m + bm + r * n_minus
    if r == 0:
        return d0p + bp, d0m + bm
    return d0p + bp + n_minus + (r - 1) * n_plus, d0m + bm + n_plus + (r - 1) * n_minus


def simulated_degree(
    n_plus: int, n_minus: int, d0p: int, d0m: int, mark: int, steps: int
) -> tuple[int, int]:
    """Follow a node of marking ``mark`` through ``steps`` attachment rounds.

    A ``+`` node gains ``n_plus`` positive and ``n_minus`` negative edges per
    round, a ``-`` node the reverse; its marking flips when it gains an odd
    number of negative edges.
    """
    p, q = d0p, d0m
    for _ in range(steps):
        gain_neg = n_minus if mark > 0 else n_plus
        p += n_plus + n_minus - gain_neg
        q += gain_neg
        if gain_neg % 2:
            mark = -mark
    return p, q


@dataclass(frozen=True)
class NodeDescriptor:
    """Identifies a degree class of ``G^(m)``.

    ``birth_step = 0`` denotes the seed node ``seed_node`` itself; otherwise
    a copy of ``seed_node`` born at that step and hung on a node marked
    ``attach_mark``.
    """

    seed_node: int
    birth_step: int = 0
    attach_mark: int | None = None
    mu0: int | None = None


FORMS = ("validated", "table", "simulated")


def _resolve(seed: SignedGraph, m: int, desc: NodeDescriptor):
    n = seed.node_count
    if not 0 <= desc.seed_node < n:
        raise DomainError(f"seed node {desc.seed_node} outside 0..{n - 1}")
    if not 0 <= desc.birth_step <= m:
        raise DomainError(f"birth step {desc.birth_step} outside 0..{m}")
    mu = canonical_marking(seed)
    mu0 = int(mu.values[desc.seed_node])
    if desc.mu0 is not None and desc.mu0 != mu0:
        raise DomainError(f"seed node {desc.seed_node} has canonical marking {mu0}, not {desc.mu0}")
    if desc.birth_step == 0 and desc.attach_mark is not None:
        raise DomainError("seed nodes have no attachment marking")
    if desc.birth_step > 0 and desc.attach_mark not in (1, -1):
        raise DomainError("nodes born after step 0 need attach_mark +1 or -1")
    pos, neg = degree_arrays(seed)
    return mu, mu0, int(pos[desc.seed_node]), int(neg[desc.seed_node])


def _both_forms(seed, m, desc):
    mu, mu0, d0p, d0m = _resolve(seed, m, desc)
    np_, nm = mu.plus_count, mu.minus_count
    if desc.birth_step == 0:
        table = table_seed_degree(np_, nm, d0p, d0m, mu0, m)
        sim = simulated_degree(np_, nm, d0p, d0m, mu0, m)
    else:
        a = desc.attach_mark
        table = table_born_degree(np_, nm, d0p, d0m, a, mu0, m, desc.birth_step)
        bp, bm = (1, 0) if a == mu0 else (0, 1)
        # after birth the node's marking equals the mark of its parent
        sim = simulated_degree(np_, nm, d0p + bp, d0m + bm, a, m - desc.birth_step)
    return table, sim


def node_degree(
    seed: SignedGraph, m: int, descriptor: NodeDescriptor, form: str = "validated"
) -> DegreeProfile:
    """Degree of a node class of ``G^(m)``.

    ``form="table"`` evaluates the tabulated cells, ``"simulated"`` the
    step-by-step flip rule; ``"validated"`` returns the table value where
    it agrees with the simulation and the simulation otherwise.
    """
    if form not in FORMS:
        raise DomainError(f"form must be one of {FORMS}, got {form!r}")
    if m < 0:
        raise DomainError(f"number of steps must be non-negative, got {m}")
    table, sim = _both_forms(seed, m, descriptor)
    chosen = table if form == "table" else sim
    return DegreeProfile(*chosen)


# -- distributions ---------------------------------------------------------

INDEX_CHOICES = ("receiving", "current")


def degree_classes(
    seed: SignedGraph, m: int, index: str = "receiving"
) -> list[tuple[NodeDescriptor, int]]:
    """Every degree class with its node count.

    A copy of seed node ``v`` born at step ``i`` hanging on a node marked
    ``a`` occurs once per ``a``-marked node of ``G^(i-1)``.  ``index="current"``
    substitutes the counts of ``G^(i)`` instead, kept only to
    quantify that alternative.
    """
    if index not in INDEX_CHOICES:
        raise DomainError(f"index must be one of {INDEX_CHOICES}, got {index!r}")
    seq = marked_count_sequence(SeedProfile.of(seed), m)
    mu = canonical_marking(seed)
    out = [(NodeDescriptor(v, 0, None, int(mu.values[v])), 1) for v in range(seed.node_count)]
    for i in range(1, m + 1):
        plus, minus = seq[i - 1] if index == "receiving" else seq[i]
        for v in range(seed.node_count):
            for a, cnt in ((1, plus), (-1, minus)):
                if cnt:
                    out.append((NodeDescriptor(v, i, a, int(mu.values[v])), cnt))
    return out


def degree_distribution(
    seed: SignedGraph, m: int, index: str = "receiving", form: str = "validated"
) -> list[tuple[int, int, int]]:
    """Joint distribution ``(d_plus, d_minus, node_count)`` of ``G^(m)``."""
    if seed.node_count == 0:
        raise DomainError("seed graph must have at least one node")
    counts: Counter = Counter()
    for desc, cnt in degree_classes(seed, m, index):
        d = node_degree(seed, m, desc, form)
        counts[(d.positive, d.negative)] += cnt
    return sorted((p, q, c) for (p, q), c in counts.items())


def measured_degree_distribution(g: SignedGraph) -> list[tuple[int, int, int]]:
    pos, neg = degree_arrays(g)
    counts = Counter(zip(pos.tolist(), neg.tolist()))
    return sorted((p, q, c) for (p, q), c in counts.items())


def marginal(dist: list[tuple[int, int, int]], which: str) -> list[tuple[int, int]]:
    """``(degree, node_count)`` pairs of the positive or negative degrees."""
    if which not in ("positive", "negative"):
        raise DomainError("which must be 'positive' or 'negative'")
    counts: Counter = Counter()
    for p, q, c in dist:
        counts[p if which == "positive" else q] += c
    return sorted(counts.items())


def cumulative(pairs: list[tuple[int, int]]) -> list[tuple[int, float]]:
    """Fraction of nodes with degree at least ``d``, for each listed ``d``."""
    total = sum(c for _, c in pairs)
    out, remaining = [], total
    for d, c in pairs:
        out.append((d, remaining / total if total else 0.0))
        remaining -= c
    return out


# -- divergence report -------------------------------------------------------


@dataclass
class DivergenceReport:
    seed_edges: list[tuple[int, int, int]]
    seed_nodes: int
    m: int
    nodes_checked: int = 0
    table_mismatches: list[dict] = field(default_factory=list)
    simulated_mismatches: list[dict] = field(default_factory=list)
    receiving_index_matches: bool = True
    current_index_matches: bool = True
    current_index_total: int = 0

    @property
    def clean(self) -> bool:
        return not self.table_mismatches and not self.simulated_mismatches and self.receiving_index_matches

    def to_dict(self) -> dict:
        return {
            "seed_nodes": self.seed_nodes,
            "seed_edges": [list(e) for e in self.seed_edges],
            "m": self.m,
            "nodes_checked": self.nodes_checked,
            "table_mismatches": self.table_mismatches,
            "simulated_mismatches": self.simulated_mismatches,
            "receiving_index_matches": self.receiving_index_matches,
            "current_index_matches": self.current_index_matches,
            "current_index_total": self.current_index_total,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def divergence_report(seed: SignedGraph, m: int, budget: int | None = None) -> DivergenceReport:
    """Compare every node's measured degree with both closed forms, and both
    class-count indexings with the measured distribution."""
    if seed.node_count < 1:
        raise UnsupportedHypothesis("empty seed")
    g, meta = grow_with_metadata(seed, m, budget)
    pos, neg = degree_arrays(g)
    mu0 = canonical_marking(seed).values
    rep = DivergenceReport(list(seed.edges()), seed.node_count, m, nodes_checked=g.node_count)
    cache: dict = {}
    for node in range(g.node_count):
        b = int(meta.birth_step[node])
        a = int(meta.attach_mark[node]) if b else None
        v = int(meta.seed_node[node])
        key = (v, b, a)
        if key not in cache:
            cache[key] = _both_forms(seed, m, NodeDescriptor(v, b, a, int(mu0[v])))
        table, sim = cache[key]
        measured = (int(pos[node]), int(neg[node]))
        row = {
            "node": node,
            "seed_node": v,
            "birth_step": b,
            "attach_mark": a,
            "mu0": int(mu0[v]),
            "measured": list(measured),
        }
        if table != measured:
            rep.table_mismatches.append({**row, "table": list(table)})
        if sim != measured:
            rep.simulated_mismatches.append({**row, "simulated": list(sim)})
    measured_dist = measured_degree_distribution(g)
    rep.receiving_index_matches = degree_distribution(seed, m, "receiving") == measured_dist
    current_dist = degree_distribution(seed, m, "current")
    rep.current_index_matches = current_dist == measured_dist
    rep.current_index_total = sum(c for _, _, c in current_dist)
    return rep


def distribution_as_array(dist: list[tuple[int, int, int]]) -> np.ndarray:
    return np.array(dist, dtype=np.int64).reshape(-1, 3)
