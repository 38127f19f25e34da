"""Exact counters of corona graphs: marked nodes, signed edges and triads.

Two independent routes are computed.  The recurrence route steps through
the marked-node table and adds per-step edge and triad increments; the
closed-form route evaluates the ``k1, k2, k3`` expressions.  Both use Python
integers, so they must agree exactly.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from ..corona import EdgeClasses, edge_classes
from ..errors import DomainError, UnsupportedHypothesis
from ..graph import SignedGraph
from ..ingest import triad_census
from ..marking import canonical_marking


@dataclass(frozen=True)
class SeedProfile:
    n: int
    k: int
    n_plus: int
    n_minus: int
    e_plus: int
    e_minus: int
    classes: EdgeClasses
    triads: tuple[int, int, int, int]

    def __post_init__(self):
        c = self.classes
        if self.n_plus + self.n_minus != self.n or self.e_plus + self.e_minus != self.k:
            raise DomainError("inconsistent seed profile totals")
        if c.positive != self.e_plus or c.negative != self.e_minus:
            raise DomainError("edge classes do not add up to the signed edge counts")
        if min(self.n_plus, self.n_minus, self.e_plus, self.e_minus, *self.triads) < 0:
            raise DomainError("seed profile counts must be non-negative")

    @classmethod
    def of(cls, seed: SignedGraph) -> "SeedProfile":
        mu = canonical_marking(seed)
        return cls(
            n=seed.node_count,
            k=seed.edge_count,
            n_plus=mu.plus_count,
            n_minus=mu.minus_count,
            e_plus=seed.positive_edge_count,
            e_minus=seed.negative_edge_count,
            classes=edge_classes(seed, mu),
            triads=triad_census(seed),
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["triads"] = list(self.triads)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SeedProfile":
        return cls(
            n=d["n"],
            k=d["k"],
            n_plus=d["n_plus"],
            n_minus=d["n_minus"],
            e_plus=d["e_plus"],
            e_minus=d["e_minus"],
            classes=EdgeClasses(**d["classes"]),
            triads=tuple(d["triads"]),
        )


def next_marked_counts(
    plus: int, minus: int, seed_plus: int, seed_minus: int, n: int
) -> tuple[int, int]:
    """Marked-node counts of ``G^(i+1)`` from those of ``G^(i)``.

    New nodes inherit the mark of the node they hang on.  An existing ``+``
    node flips when the seed has an odd number of ``-`` nodes; an existing
    ``-`` node flips when the seed has an odd number of ``+`` nodes.
    """
    total = plus + minus
    p_odd, m_odd = seed_plus % 2 == 1, seed_minus % 2 == 1
    if p_odd and m_odd:
        return minus + n * plus, plus + n * minus
    if not p_odd and m_odd:
        return n * plus, n * minus + total
    if not p_odd and not m_odd:
        return plus * (1 + n), minus * (1 + n)
    return total + n * plus, n * minus


def marked_count_sequence(profile: SeedProfile, m: int) -> list[tuple[int, int]]:
    seq = [(profile.n_plus, profile.n_minus)]
    for _ in range(m):
        seq.append(next_marked_counts(*seq[-1], profile.n_plus, profile.n_minus, profile.n))
    return seq


def triad_increment(profile: SeedProfile, plus: int, minus: int) -> tuple[int, int, int, int]:
    """New triads when every node of a graph with ``plus``/``minus`` marked
    nodes receives a copy of the seed."""
    c = profile.classes
    return (
        plus * c.pos_pp + minus * c.pos_mm,
        plus * (c.pos_pm + c.neg_pp) + minus * (c.pos_pm + c.neg_mm),
        plus * (c.pos_mm + c.neg_pm) + minus * (c.pos_pp + c.neg_pm),
        plus * c.neg_mm + minus * c.neg_pp,
    )


@dataclass(frozen=True)
class KFactors:
    k1: int
    k2: int
    k3: int


def k_factors(profile: SeedProfile, m: int) -> KFactors:
    seq = marked_count_sequence(profile, m)
    k1 = (profile.n + 1) ** m
    return KFactors(k1, k1 - 1, sum(minus for _, minus in seq[:m]))


@dataclass(frozen=True)
class ClosedForm:
    e_plus: int
    e_minus: int
    triads: tuple[int, int, int, int]


def closed_form_counts(profile: SeedProfile, m: int, factors: KFactors | None = None) -> ClosedForm:
    """Signed edges and triads of ``G^(m)`` from the ``k1, k2, k3`` forms."""
    f = factors or k_factors(profile, m)
    c, t = profile.classes, profile.triads
    np0, nm0 = profile.n_plus, profile.n_minus
    return ClosedForm(
        e_plus=profile.e_plus * f.k1 + np0 * f.k2 + (nm0 - np0) * f.k3,
        e_minus=profile.e_minus * f.k1 + nm0 * f.k2 + (np0 - nm0) * f.k3,
        triads=(
            t[0] * f.k1 + c.pos_pp * f.k2 + (c.pos_mm - c.pos_pp) * f.k3,
            t[1] * f.k1 + (c.pos_pm + c.neg_pp) * f.k2 + (c.neg_mm - c.neg_pp) * f.k3,
            t[2] * f.k1 + (c.pos_mm + c.neg_pm) * f.k2 + (c.pos_pp - c.pos_mm) * f.k3,
            t[3] * f.k1 + c.neg_mm * f.k2 + (c.neg_pp - c.neg_mm) * f.k3,
        ),
    )


@dataclass(frozen=True)
class StepCounts:
    step: int
    nodes: int
    edges: int
    n_plus: int
    n_minus: int
    e_plus: int
    e_minus: int
    t0: int
    t1: int
    t2: int
    t3: int

    @property
    def triads(self) -> tuple[int, int, int, int]:
        return (self.t0, self.t1, self.t2, self.t3)

    @property
    def p_e_plus(self) -> float:
        return self.e_plus / self.edges if self.edges else 0.0

    @property
    def p_t(self) -> tuple[float, float, float, float]:
        total = sum(self.triads)
        return tuple(t / total for t in self.triads) if total else (0.0, 0.0, 0.0, 0.0)


@dataclass
class GrowthTrace:
    seed: SeedProfile
    steps: list[StepCounts]
    factors: KFactors
    closed_form: ClosedForm
    mismatches: list[str] = field(default_factory=list)
    label: str = ""

    @property
    def m(self) -> int:
        return len(self.steps) - 1

    @property
    def final(self) -> StepCounts:
        return self.steps[-1]

    @property
    def agrees(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "m": self.m,
            "seed": self.seed.to_dict(),
            "steps": [
                {**asdict(s), "p_e_plus": s.p_e_plus, "p_t": list(s.p_t)} for s in self.steps
            ],
            "k1": self.factors.k1,
            "k2": self.factors.k2,
            "k3": self.factors.k3,
            "closed_form": {
                "e_plus": self.closed_form.e_plus,
                "e_minus": self.closed_form.e_minus,
                "triads": list(self.closed_form.triads),
            },
            "agrees": self.agrees,
            "mismatches": list(self.mismatches),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "GrowthTrace":
        steps = [
            StepCounts(**{k: s[k] for k in StepCounts.__dataclass_fields__}) for s in d["steps"]
        ]
        cf = d["closed_form"]
        return cls(
            seed=SeedProfile.from_dict(d["seed"]),
            steps=steps,
            factors=KFactors(d["k1"], d["k2"], d["k3"]),
            closed_form=ClosedForm(cf["e_plus"], cf["e_minus"], tuple(cf["triads"])),
            mismatches=list(d.get("mismatches", [])),
            label=d.get("label", ""),
        )


def trace_profile(profile: SeedProfile, m: int) -> GrowthTrace:
    if m < 0:
        raise DomainError(f"number of steps must be non-negative, got {m}")
    n, k = profile.n, profile.k
    seq = marked_count_sequence(profile, m)
    e_plus, e_minus = profile.e_plus, profile.e_minus
    triads = list(profile.triads)
    steps = []
    mismatches = []
    for i in range(m + 1):
        plus, minus = seq[i]
        nodes = n * (n + 1) ** i
        edges = (k + n) * (n + 1) ** i - n
        steps.append(StepCounts(i, nodes, edges, plus, minus, e_plus, e_minus, *triads))
        if plus + minus != nodes:
            mismatches.append(f"step {i}: marked nodes {plus}+{minus} != {nodes}")
        if e_plus + e_minus != edges:
            mismatches.append(f"step {i}: signed edges {e_plus}+{e_minus} != {edges}")
        cf = closed_form_counts(profile, i)
        if (cf.e_plus, cf.e_minus, cf.triads) != (e_plus, e_minus, tuple(triads)):
            mismatches.append(
                f"step {i}: recurrence ({e_plus}, {e_minus}, {tuple(triads)}) "
                f"!= closed form ({cf.e_plus}, {cf.e_minus}, {cf.triads})"
            )
        if i == m:
            break
        copies = nodes
        e_plus += profile.e_plus * copies + plus * profile.n_plus + minus * profile.n_minus
        e_minus += profile.e_minus * copies + plus * profile.n_minus + minus * profile.n_plus
        inc = triad_increment(profile, plus, minus)
        triads = [triads[j] + copies * profile.triads[j] + inc[j] for j in range(4)]
    return GrowthTrace(
        seed=profile,
        steps=steps,
        factors=k_factors(profile, m),
        closed_form=closed_form_counts(profile, m),
        mismatches=mismatches,
    )


def trace(seed: SignedGraph, m: int, marking: str = "canonical", label: str = "") -> GrowthTrace:
    """Per-step counters of ``G^(0..m)``; closed forms derive only from the
    canonical marking, so any other scheme is refused."""
    if marking != "canonical":
        raise UnsupportedHypothesis(
            f"growth counters are available for the canonical marking only, not {marking!r}"
        )
    if seed.node_count == 0:
        raise DomainError("seed graph must have at least one node")
    out = trace_profile(SeedProfile.of(seed), m)
    out.label = label
    return out
