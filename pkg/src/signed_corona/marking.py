"""Node markings: a +/-1 label per node used to sign corona attachment edges."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError
from .graph import SignedGraph, degree_arrays

SCHEMES = ("canonical", "plurality", "explicit")


@dataclass(frozen=True, eq=False)
class MarkingVector:
    values: np.ndarray
    scheme: str = "explicit"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.int64).copy()
        if vals.ndim != 1 or not np.all((vals == 1) | (vals == -1)):
            raise DomainError("marking values must be a 1-D vector of +1/-1")
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown marking scheme {self.scheme!r}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkingVector):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    @property
    def plus_count(self) -> int:
        return int(np.count_nonzero(self.values == 1))

    @property
    def minus_count(self) -> int:
        return int(np.count_nonzero(self.values == -1))

    @property
    def uniform(self) -> bool:
        """True when every node carries the same mark (vacuously for no nodes)."""
        return self.values.size == 0 or bool(np.all(self.values == self.values[0]))

    def symbols(self) -> str:
        return "".join("+" if x > 0 else "-" for x in self.values.tolist())


def canonical_marking(g: SignedGraph) -> MarkingVector:
    """Product of incident edge signs; isolated nodes get +1."""
    _, neg = degree_arrays(g)
    return MarkingVector(np.where(neg % 2 == 0, 1, -1), "canonical")


def plurality_marking(g: SignedGraph) -> MarkingVector:
    """-1 exactly when a node has strictly more negative than positive edges."""
    pos, neg = degree_arrays(g)
    return MarkingVector(np.where(neg > pos, -1, 1), "plurality")


def explicit_marking(values: Iterable[int]) -> MarkingVector:
    return MarkingVector(np.fromiter((int(x) for x in values), dtype=np.int64), "explicit")


def marking(g: SignedGraph, scheme: str) -> MarkingVector:
    if scheme == "canonical":
        return canonical_marking(g)
    if scheme == "plurality":
        return plurality_marking(g)
    raise DomainError(f"scheme {scheme!r} cannot be derived from a graph")


def check_marking(g: SignedGraph, mu: MarkingVector, name: str = "marking") -> None:
    if len(mu) != g.node_count:
        raise DomainError(f"{name} has {len(mu)} entries for a graph on {g.node_count} nodes")
