"""Search for seed graphs whose corona graphs match a target signed profile.

Candidate sizes ``(n, m)`` are those with ``n(n+1)^m`` within a factor two
of the desired node count.  Seeds with ``n <= 6`` are enumerated
exhaustively: every connected unlabeled graph from the networkx atlas with
every sign pattern, scored in bulk through the closed forms.  Larger seeds
use randomized local search.  Every returned profile is recomputed through
:func:`signed_corona.growth.trace`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .corona import EdgeClasses
from .errors import DomainError, NumericalError
from .graph import SignedGraph, degree_arrays, is_balanced, is_connected
from .growth.counts import (
    ClosedForm,
    KFactors,
    SeedProfile,
    closed_form_counts,
    k_factors,
    marked_count_sequence,
    trace,
)
from .ingest import NetworkProfile

EXHAUSTIVE_MAX_N = 6
SEARCH_MAX_N = 10
DEFAULT_WEIGHTS = (1.0, 1.0, 1.0, 1.0, 1.0)  # p(E+), p(T0..T3)


@dataclass(frozen=True)
class FitTarget:
    nodes: int
    p_e_plus: float
    p_t: tuple[float, float, float, float]
    tolerance: tuple[float, float, float, float, float] = (0.02, 0.02, 0.02, 0.02, 0.02)
    n_max: int = 6
    m_max: int = 30
    n_min: int = 2
    weights: tuple[float, float, float, float, float] = DEFAULT_WEIGHTS
    randomized: bool = False
    rng_seed: int = 0
    restarts: int = 8
    iterations: int = 400

    def __post_init__(self):
        if self.nodes < 1:
            raise DomainError("desired node count must be positive")
        if not 0.0 <= self.p_e_plus <= 1.0:
            raise DomainError("p_e_plus must lie in [0, 1]")
        if len(self.p_t) != 4 or any(not 0.0 <= p <= 1.0 for p in self.p_t):
            raise DomainError("p_t must be four fractions in [0, 1]")
        if len(self.tolerance) != 5 or any(t < 0 for t in self.tolerance):
            raise DomainError("tolerance needs five non-negative entries")
        if len(self.weights) != 5 or any(w < 0 for w in self.weights):
            raise DomainError("weights need five non-negative entries")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise DomainError("need 1 <= n_min <= n_max")
        if self.n_max > SEARCH_MAX_N and not self.randomized:
            raise DomainError(f"n_max above {SEARCH_MAX_N} requires randomized search")
        if self.m_max < 1:
            raise DomainError("m_max must be at least 1")

    @classmethod
    def from_profile(cls, profile: NetworkProfile, **kw) -> "FitTarget":
        return cls(nodes=profile.nodes or 1, p_e_plus=profile.p_e_plus, p_t=profile.p_t, **kw)


def candidate_sizes(target: FitTarget) -> list[tuple[int, int, int]]:
    """``(n, m, order)`` with ``order = n(n+1)^m`` within a factor 2 of the target,
    nearest first (in log ratio)."""
    out = []
    for n in range(target.n_min, target.n_max + 1):
        for m in range(1, target.m_max + 1):
            order = n * (n + 1) ** m
            if order > 2 * target.nodes:
                break
            if 2 * order >= target.nodes:
                out.append((n, m, order))
    out.sort(key=lambda t: (abs(math.log(t[2] / target.nodes)), t[0], t[1]))
    return out


# -- bulk enumeration -----------------------------------------------------


@dataclass(frozen=True)
class _Family:
    """All sign patterns of one unlabeled connected graph, as count arrays."""

    n: int
    edges: np.ndarray  # (k, 2)
    negative: np.ndarray  # (P, k) bool, one row per sign pattern
    n_plus: np.ndarray
    classes: np.ndarray  # (P, 6): pos_pp, pos_pm, pos_mm, neg_pp, neg_pm, neg_mm
    triads: np.ndarray  # (P, 4)


def _atlas_graphs(n: int) -> list[np.ndarray]:
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for h in graph_atlas_g():
        if h.number_of_nodes() == n and (n == 1 or nx.is_connected(h)):
            out.append(np.array(sorted(tuple(sorted(e)) for e in h.edges()), dtype=np.int64).reshape(-1, 2))
    return out


def _family(n: int, edges: np.ndarray) -> _Family:
    k = len(edges)
    codes = np.arange(2**k, dtype=np.int64)
    neg = ((codes[:, None] >> np.arange(k)) & 1).astype(bool)
    inc = np.zeros((k, n), dtype=np.int64)
    inc[np.arange(k), edges[:, 0]] = 1
    inc[np.arange(k), edges[:, 1]] = 1
    negdeg = neg.astype(np.int64) @ inc
    plus = negdeg % 2 == 0
    mu_u, mu_v = plus[:, edges[:, 0]], plus[:, edges[:, 1]]
    both_p, both_m = mu_u & mu_v, ~mu_u & ~mu_v
    mixed = mu_u ^ mu_v
    pos = ~neg
    classes = np.stack(
        [
            (pos & both_p).sum(1),
            (pos & mixed).sum(1),
            (pos & both_m).sum(1),
            (neg & both_p).sum(1),
            (neg & mixed).sum(1),
            (neg & both_m).sum(1),
        ],
        axis=1,
    )
    index = {(int(a), int(b)): e for e, (a, b) in enumerate(edges.tolist())}
    tri = []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                if (a, b) in index and (a, c) in index and (b, c) in index:
                    tri.append((index[(a, b)], index[(a, c)], index[(b, c)]))
    triads = np.zeros((len(codes), 4), dtype=np.int64)
    if tri:
        nneg = neg[:, np.array(tri)].sum(2)
        for j in range(4):
            triads[:, j] = (nneg == j).sum(1)
    return _Family(n, edges, neg, plus.sum(1), classes, triads)


def _signed(n: int, edges: np.ndarray, negative_row: np.ndarray) -> SignedGraph:
    return SignedGraph.from_arrays(n, edges[:, 0], edges[:, 1], np.where(negative_row, -1, 1))


@lru_cache(maxsize=8)
def _families(n: int) -> tuple[_Family, ...]:
    if n > EXHAUSTIVE_MAX_N:
        raise DomainError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")
    return tuple(_family(n, e) for e in _atlas_graphs(n))


def _k_table(n: int, m: int) -> np.ndarray:
    """``k3`` for every possible ``n_plus = 0..n``."""
    out = np.zeros(n + 1, dtype=object)
    dummy = EdgeClasses()
    for p in range(n + 1):
        prof = SeedProfile(n, 0, p, n - p, 0, 0, dummy, (0, 0, 0, 0))
        out[p] = sum(minus for _, minus in marked_count_sequence(prof, m)[:m])
    return out


def _bulk_counts(fam: _Family, m: int):
    """Closed-form counts of ``G^(m)`` for every sign pattern of a family (object ints)."""
    n = fam.n
    k1 = (n + 1) ** m
    k2 = k1 - 1
    k3 = _k_table(n, m)[fam.n_plus]
    np0 = fam.n_plus.astype(object)
    nm0 = n - np0
    em = fam.negative.sum(1).astype(object)
    ep = len(fam.edges) - em
    c = fam.classes.astype(object)
    t = fam.triads.astype(object)
    pp, pm, pmm, qpp, qpm, qmm = (c[:, i] for i in range(6))
    e_plus = ep * k1 + np0 * k2 + (nm0 - np0) * k3
    e_minus = em * k1 + nm0 * k2 + (np0 - nm0) * k3
    tri = np.stack(
        [
            t[:, 0] * k1 + pp * k2 + (pmm - pp) * k3,
            t[:, 1] * k1 + (pm + qpp) * k2 + (qmm - qpp) * k3,
            t[:, 2] * k1 + (pmm + qpm) * k2 + (pp - pmm) * k3,
            t[:, 3] * k1 + qmm * k2 + (qpp - qmm) * k3,
        ],
        axis=1,
    )
    return e_plus, e_minus, tri


def _fractions(e_plus, e_minus, tri):
    edges = (e_plus + e_minus).astype(float)
    pe = np.where(edges > 0, e_plus.astype(float) / np.where(edges > 0, edges, 1), 0.0)
    tot = tri.sum(1).astype(float)
    pt = np.where(tot[:, None] > 0, tri.astype(float) / np.where(tot > 0, tot, 1)[:, None], 0.0)
    return pe, pt


def score_fractions(pe, pt, target: FitTarget) -> np.ndarray:
    w = np.asarray(target.weights, dtype=float)
    return w[0] * np.abs(pe - target.p_e_plus) + np.abs(pt - np.asarray(target.p_t)) @ w[1:]


def _constrained_mask(fam: _Family) -> np.ndarray:
    c = fam.classes
    return (c[:, 1] == 0) & (c[:, 2] == 0) & (c[:, 5] == 0) & (fam.triads[:, 3] == 0)


# -- results --------------------------------------------------------------


@dataclass
class Candidate:
    seed: SignedGraph
    m: int
    profile: NetworkProfile
    score: float
    within_tolerance: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "seed_nodes": self.seed.node_count,
            "seed_edges": [list(e) for e in self.seed.edges()],
            "score": self.score,
            "within_tolerance": self.within_tolerance,
            "profile": self.profile.to_dict(),
        }


@dataclass
class FitResult:
    feasible: bool
    candidates: list[Candidate] = field(default_factory=list)
    sizes: list[tuple[int, int, int]] = field(default_factory=list)
    reason: str = ""
    evaluated: int = 0

    def to_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "reason": self.reason,
            "evaluated": self.evaluated,
            "sizes": [list(s) for s in self.sizes],
            "candidates": [c.to_dict() for c in self.candidates],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def predicted_profile(seed: SignedGraph, m: int, label: str = "") -> NetworkProfile:
    """Profile of ``G^(m)`` from the growth counters; balance via the edge-type criterion."""
    tr = trace(seed, m)
    f = tr.final
    c = tr.seed.classes
    balanced = is_balanced(seed) and (m == 0 or (c.pos_pm == 0 and c.neg_pp == 0 and c.neg_mm == 0))
    return NetworkProfile(
        nodes=f.nodes,
        edges=f.edges,
        positive_edges=f.e_plus,
        triads=f.triads,
        balanced=balanced,
        label=label,
    )


def _within(profile: NetworkProfile, target: FitTarget) -> bool:
    diffs = [abs(profile.p_e_plus - target.p_e_plus)] + [
        abs(a - b) for a, b in zip(profile.p_t, target.p_t)
    ]
    return all(d <= t + 1e-12 for d, t in zip(diffs, target.tolerance))


def signature(seed: SignedGraph) -> tuple:
    """Cheap isomorphism-invariant form: refined node colours plus signed edge colours.

    Two isomorphic signed graphs always share it; rare non-isomorphic
    collisions are accepted.
    """
    pos, neg = degree_arrays(seed)
    colour = [(int(p), int(q)) for p, q in zip(pos.tolist(), neg.tolist())]
    adj = seed.adjacency_index()
    for _ in range(2):
        colour = [
            (colour[v], tuple(sorted((colour[w], s) for w, s in adj[v].items())))
            for v in range(seed.node_count)
        ]
        relabel = {c: i for i, c in enumerate(sorted(set(colour)))}
        colour = [relabel[c] for c in colour]
    edges = sorted(
        (min(colour[u], colour[v]), max(colour[u], colour[v]), s) for u, v, s in seed.edges()
    )
    return seed.node_count, tuple(sorted(colour)), tuple(edges)


def _exhaustive(target, n, m, constrained, keep):
    pool = []
    evaluated = 0
    for fam in _families(n):
        e_plus, e_minus, tri = _bulk_counts(fam, m)
        pe, pt = _fractions(e_plus, e_minus, tri)
        sc = score_fractions(pe, pt, target)
        if constrained:
            sc = np.where(_constrained_mask(fam), sc, np.inf)
        evaluated += int(np.isfinite(sc).sum())
        order = np.argsort(sc, kind="stable")[:keep]
        for idx in order.tolist():
            if np.isfinite(sc[idx]):
                pool.append((float(sc[idx]), n, m, fam, idx, e_plus[idx], tri[idx]))
    return pool, evaluated


def _random_connected(rng, n: int) -> set[tuple[int, int]]:
    perm = rng.permutation(n)
    edges = set()
    for i in range(1, n):
        a, b = int(perm[i]), int(perm[rng.integers(0, i)])
        edges.add((min(a, b), max(a, b)))
    return edges


def _profile_score(seed: SignedGraph, m: int, target: FitTarget, constrained: bool):
    prof = SeedProfile.of(seed)
    c = prof.classes
    if constrained and (c.pos_pm or c.pos_mm or c.neg_mm or prof.triads[3]):
        return math.inf, None
    cf = closed_form_counts(prof, m)
    pe, pt = _fractions(
        np.array([cf.e_plus], dtype=object),
        np.array([cf.e_minus], dtype=object),
        np.array([cf.triads], dtype=object),
    )
    return float(score_fractions(pe, pt, target)[0]), cf


def _cycle_through(edges, a: int, b: int) -> list[tuple[int, int]] | None:
    """Edges of a shortest cycle through ``(a, b)``, or None if it is a bridge."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        if (u, v) != (a, b):
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
    prev = {a: a}
    queue = [a]
    for u in queue:
        if u == b:
            break
        for w in sorted(adj.get(u, ())):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    if b not in prev:
        return None
    cycle = [(a, b)]
    v = b
    while v != a:
        u = prev[v]
        cycle.append((min(u, v), max(u, v)))
        v = u
    return cycle


def _local_search(target, n, m, constrained, rng):
    """Hill-climb over connected signed graphs on ``n`` nodes.

    Besides single-edge moves, one move flips every sign on a cycle: that
    keeps each node's negative-degree parity, hence its canonical mark, so
    the constrained family is not a trap for the search.
    """
    found = []
    evaluated = 0
    all_pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for _ in range(target.restarts):
        edges = _random_connected(rng, n)
        extra = rng.integers(0, len(all_pairs) - len(edges) + 1)
        for idx in rng.permutation(len(all_pairs))[:extra]:
            edges.add(all_pairs[int(idx)])
        signs = {e: 1 for e in edges}
        if not constrained:
            for e in edges:
                if rng.random() < 1.0 - target.p_e_plus:
                    signs[e] = -1
        cur = SignedGraph(n, [(a, b, s) for (a, b), s in signs.items()])
        best, _ = _profile_score(cur, m, target, constrained)
        evaluated += 1
        for _ in range(target.iterations):
            trial = dict(signs)
            move = rng.integers(0, 4)
            pair = all_pairs[int(rng.integers(0, len(all_pairs)))]
            if move == 3 and pair in trial:
                cycle = _cycle_through(trial, *pair)
                if cycle is None:
                    continue
                for e in cycle:
                    trial[e] = -trial[e]
            elif move == 0 and pair in trial:
                trial[pair] = -trial[pair]
            elif move == 1 and pair not in trial:
                trial[pair] = 1 if rng.random() < target.p_e_plus else -1
            elif move == 2 and pair in trial:
                del trial[pair]
            else:
                continue
            g = SignedGraph(n, [(a, b, s) for (a, b), s in trial.items()])
            if not is_connected(g):
                continue
            sc, _ = _profile_score(g, m, target, constrained)
            evaluated += 1
            if sc <= best:
                best, signs, cur = sc, trial, g
        if math.isfinite(best):
            found.append((best, cur))
    return found, evaluated


def recommend_seed(target: FitTarget, constrained: bool = False, top: int = 10) -> FitResult:
    """Ranked seeds whose ``G^(m)`` best matches the target fractions.

    Ties on score are broken by closeness of ``n(n+1)^m`` to the desired
    node count, then by ``(n, m)`` and the seed's edge list, so the ranking
    is deterministic for a given ``rng_seed``.
    """
    if top < 1:
        raise DomainError("top must be at least 1")
    sizes = candidate_sizes(target)
    if not sizes:
        return FitResult(
            feasible=False,
            reason=(
                f"no seed size n in {target.n_min}..{target.n_max} with m <= {target.m_max} "
                f"gives n(n+1)^m within a factor 2 of {target.nodes}"
            ),
        )
    rng = np.random.default_rng(target.rng_seed)
    raw: list[tuple[float, int, int, SignedGraph]] = []
    evaluated = 0
    for n, m, _ in sizes:
        if n <= EXHAUSTIVE_MAX_N and not target.randomized:
            pool, cnt = _exhaustive(target, n, m, constrained, keep=4 * top)
            evaluated += cnt
            raw.extend((sc, n, m, _signed(n, fam.edges, fam.negative[idx])) for sc, n, m, fam, idx, _, _ in pool)
        else:
            found, cnt = _local_search(target, n, m, constrained, rng)
            evaluated += cnt
            raw.extend((sc, n, m, g) for sc, g in found)
    raw.sort(
        key=lambda r: (
            round(r[0], 12),
            abs(math.log(r[1] * (r[1] + 1) ** r[2] / target.nodes)),
            r[1],
            r[2],
            tuple(r[3].edges()),
        )
    )
    seen = set()
    out = []
    for sc, n, m, g in raw:
        key = (m, signature(g))
        if key in seen:
            continue
        seen.add(key)
        prof = predicted_profile(g, m)
        check = score_fractions(np.array([prof.p_e_plus]), np.array([prof.p_t]), target)[0]
        if abs(check - sc) > 1e-9:
            raise NumericalError(f"bulk score {sc} disagrees with traced score {check}")
        out.append(Candidate(g, m, prof, float(check), _within(prof, target)))
        if len(out) == top:
            break
    return FitResult(feasible=True, candidates=out, sizes=sizes, evaluated=evaluated)


# -- constrained closed forms ---------------------------------------------


@dataclass(frozen=True)
class ConstrainedForms:
    triads: tuple[int, int, int, int]
    e_plus: int
    e_minus: int
    factors: KFactors
    constrained: bool


def constrained_triad_forms(profile: SeedProfile, m: int) -> ConstrainedForms:
    """Signed edges and triads of ``G^(m)`` from the ``k1, k2, k3`` forms.

    When the seed has no positive edge touching a ``-`` node, no negative
    edge between ``-`` nodes and no ``T3`` triad, the shortened forms are
    used instead; they agree with the general ones on that family.
    """
    f = k_factors(profile, m)
    c, t = profile.classes, profile.triads
    constrained = c.pos_pm == 0 and c.pos_mm == 0 and c.neg_mm == 0 and t[3] == 0
    if constrained:
        triads = (
            t[0] * f.k1 + c.pos_pp * (f.k2 - f.k3),
            t[1] * f.k1 + c.neg_pp * (f.k2 - f.k3),
            t[2] * f.k1 + c.neg_pm * f.k2 + c.pos_pp * f.k3,
            c.neg_pp * f.k3,
        )
        np0, nm0 = profile.n_plus, profile.n_minus
        e_plus = profile.e_plus * f.k1 + np0 * f.k2 + (nm0 - np0) * f.k3
        e_minus = profile.e_minus * f.k1 + nm0 * f.k2 + (np0 - nm0) * f.k3
    else:
        cf: ClosedForm = closed_form_counts(profile, m, f)
        triads, e_plus, e_minus = cf.triads, cf.e_plus, cf.e_minus
    return ConstrainedForms(tuple(triads), e_plus, e_minus, f, constrained)
