"""Real signed-network ingest: SNAP-style edge lists, triad census, profiles."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import IO, Iterable

import numpy as np

from .errors import DomainError, ParseError
from .graph import SignedGraph, is_balanced

CONFLICT_RULES = ("neg", "pos", "drop")


@dataclass
class ParsedNetwork:
    graph: SignedGraph
    labels: list[str]
    conflicts: int = 0
    self_loops: int = 0
    zero_weight: int = 0
    duplicates: int = 0


def parse_signed_edge_list(
    stream: Iterable[str], conflict: str = "neg", source: str | None = None
) -> ParsedNetwork:
    """Collapse a directed, possibly weighted signed edge list to a simple graph.

    Each data line is ``from to weight [extra...]`` separated by whitespace or
    commas.  The sign of an edge is the sign of its weight; zero weights and
    self-loops are dropped.  Reciprocal and repeated pairs become one
    undirected edge.  A pair observed with both signs is resolved by
    ``conflict``: ``neg`` keeps -1, ``pos`` keeps +1, ``drop`` removes it.
    """
    if conflict not in CONFLICT_RULES:
        raise DomainError(f"conflict rule must be one of {CONFLICT_RULES}, got {conflict!r}")
    ids: dict[str, int] = {}
    seen: dict[tuple[int, int], int] = {}  # bit 1 = saw +, bit 2 = saw -
    loops = zeros = 0
    records = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        parts = line.replace(",", " ").split()
        if len(parts) < 3:
            raise ParseError(f"expected 'from to sign', got {line!r}", lineno, source)
        try:
            weight = float(parts[2])
        except ValueError:
            raise ParseError(f"non-numeric sign/weight {parts[2]!r}", lineno, source) from None
        if math.isnan(weight):
            raise ParseError("NaN weight", lineno, source)
        a = ids.setdefault(parts[0], len(ids))
        b = ids.setdefault(parts[1], len(ids))
        records += 1
        if a == b:
            loops += 1
            continue
        if weight == 0:
            zeros += 1
            continue
        key = (a, b) if a < b else (b, a)
        seen[key] = seen.get(key, 0) | (1 if weight > 0 else 2)
    edges = []
    conflicts = 0
    for (a, b), bits in seen.items():
        if bits == 3:
            conflicts += 1
            if conflict == "drop":
                continue
            edges.append((a, b, -1 if conflict == "neg" else 1))
        else:
            edges.append((a, b, 1 if bits == 1 else -1))
    kept = records - loops - zeros
    labels = [None] * len(ids)
    for label, idx in ids.items():
        labels[idx] = label
    return ParsedNetwork(
        graph=SignedGraph(len(ids), edges),
        labels=labels,
        conflicts=conflicts,
        self_loops=loops,
        zero_weight=zeros,
        duplicates=kept - len(seen),
    )


def read_signed_edge_list(path: str | os.PathLike, conflict: str = "neg") -> ParsedNetwork:
    with open(path, encoding="utf-8") as fh:
        return parse_signed_edge_list(fh, conflict=conflict, source=os.fspath(path))


# -- triad census -----------------------------------------------------------

_WORKER_ADJ: list[dict[int, int]] | None = None


def _init_worker(adj):
    global _WORKER_ADJ
    _WORKER_ADJ = adj


def _census_chunk(edges, adj=None) -> tuple[int, int, int, int]:
    adj = adj if adj is not None else _WORKER_ADJ
    counts = [0, 0, 0, 0]
    for u, v, s in edges:
        au, av = adj[u], adj[v]
        if len(au) > len(av):
            small, other = av, au
        else:
            small, other = au, av
        base = 1 if s < 0 else 0
        for w, sw in small.items():
            if w > v and w in other:
                counts[base + (sw < 0) + (other[w] < 0)] += 1
    return tuple(counts)


def triad_census(g: SignedGraph, workers: int = 1) -> tuple[int, int, int, int]:
    """Triangles by number of negative edges: ``(T0, T1, T2, T3)``.

    Edge-iterator: for each edge ``u < v`` the common neighbours ``w > v``
    close a triangle, so every triangle is counted exactly once.
    """
    adj = g.adjacency_index()
    edges = list(g.edges())
    if workers <= 1 or len(edges) < 10_000:
        return _census_chunk(edges, adj)
    step = -(-len(edges) // workers)
    chunks = [edges[i : i + step] for i in range(0, len(edges), step)]
    total = np.zeros(4, dtype=np.int64)
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(adj,)) as ex:
        for part in ex.map(_census_chunk, chunks):
            total += np.asarray(part, dtype=np.int64)
    return tuple(int(x) for x in total)


# -- profiles ---------------------------------------------------------------

SPECTRAL_BUDGET = 3000


@dataclass
class NetworkProfile:
    nodes: int
    edges: int
    positive_edges: int
    triads: tuple[int, int, int, int]
    balanced: bool
    algebraic_conflict: float | None = None
    label: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def p_e_plus(self) -> float:
        return self.positive_edges / self.edges if self.edges else 0.0

    @property
    def p_t(self) -> tuple[float, float, float, float]:
        total = sum(self.triads)
        if total == 0:
            return (0.0, 0.0, 0.0, 0.0)
        return tuple(t / total for t in self.triads)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["triads"] = list(self.triads)
        d["p_e_plus"] = self.p_e_plus
        d["p_t"] = list(self.p_t)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "NetworkProfile":
        """Accepts full profiles and fraction-only targets.

        A target may omit raw counts; fractions are then turned into counts
        on a 10**9 scale so that ``p_e_plus``/``p_t`` round-trip.
        """
        scale = 10**9
        edges = d.get("edges")
        if "positive_edges" in d and edges is not None:
            pos = int(d["positive_edges"])
        else:
            edges = int(edges) if edges else scale
            pos = round(float(d.get("p_e_plus", 0.0)) * edges)
        if "triads" in d:
            triads = tuple(int(t) for t in d["triads"])
        else:
            triads = tuple(round(float(p) * scale) for p in d.get("p_t", (0, 0, 0, 0)))
        if len(triads) != 4:
            raise DomainError("profile needs four triad entries")
        return cls(
            nodes=int(d.get("nodes", 0)),
            edges=int(edges),
            positive_edges=pos,
            triads=triads,
            balanced=bool(d.get("balanced", False)),
            algebraic_conflict=d.get("algebraic_conflict"),
            label=str(d.get("label", "")),
            extra=dict(d.get("extra", {})),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def network_profile(
    g: SignedGraph,
    label: str = "",
    spectral_budget: int = SPECTRAL_BUDGET,
    workers: int = 1,
) -> NetworkProfile:
    """Counts, sign/triad fractions, balance, and (on small graphs) conflict."""
    conflict = None
    if 0 < g.node_count <= spectral_budget:
        from .spectra import least_laplacian_eigenvalue

        conflict = least_laplacian_eigenvalue(g)
    return NetworkProfile(
        nodes=g.node_count,
        edges=g.edge_count,
        positive_edges=g.positive_edge_count,
        triads=triad_census(g, workers=workers),
        balanced=is_balanced(g),
        algebraic_conflict=conflict,
        label=label,
    )


def load_profile(path: str | os.PathLike | IO[str]) -> NetworkProfile:
    """Read a profile JSON, or the final step of a growth-trace JSON."""
    if hasattr(path, "read"):
        data = json.load(path)  # type: ignore[arg-type]
    else:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    if "steps" in data and "seed" in data:
        last = data["steps"][-1]
        return NetworkProfile(
            nodes=last["nodes"],
            edges=last["edges"],
            positive_edges=last["e_plus"],
            triads=(last["t0"], last["t1"], last["t2"], last["t3"]),
            balanced=False,
            label=data.get("label", "trace"),
        )
    return NetworkProfile.from_dict(data)
