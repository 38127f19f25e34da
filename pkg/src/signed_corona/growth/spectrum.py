"""Signed Laplacian spectrum and algebraic conflict of corona graphs.

For a seed whose nodes share one negative degree ``d`` (so its canonical
marking is uniform), each growth step maps every eigenvalue ``x`` of the
current graph to the two roots ``f_+(x), f_-(x)`` of
``(y - (2d + 1))(y - x - n) = n`` and adds ``η_j + 1`` for the seed
eigenvalues other than ``2d``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .. import eigen
from ..errors import NumericalError, UnsupportedHypothesis
from ..graph import SignedGraph, degree_arrays, laplacian
from ..marking import canonical_marking
from .generate import check_budget, grow

ORACLE_BUDGET = 3000
TIE_TOL = 1e-9
CONJECTURE_TOL = 1e-9
MAX_ENUMERATED_STEPS = 16


def branch(x: float, dneg: int, n: int, sign: int) -> float:
    a = 2 * dneg + 1
    return (a + x + n + sign * math.sqrt((a - x - n) ** 2 + 4 * n)) / 2.0


def f_plus(x: float, dneg: int, n: int) -> float:
    return branch(x, dneg, n, 1)


def f_minus(x: float, dneg: int, n: int) -> float:
    return branch(x, dneg, n, -1)


def apply_word(x: float, word: str, dneg: int, n: int) -> float:
    """Compose the branches left to right: ``word[0]`` is applied first."""
    for ch in word:
        x = branch(x, dneg, n, 1 if ch == "+" else -1)
    return x


def lemma_total(n: int, m: int) -> int:
    """Multiplicity total of the three clauses, which telescopes to ``n(n+1)^m``."""
    if m == 0:
        return n
    total = 2**m * n + n * (n - 1) * (n + 1) ** (m - 1)
    total += sum(2**i * n * (n - 1) * (n + 1) ** (m - i - 1) for i in range(1, m))
    return total


@dataclass(frozen=True)
class BranchEntry:
    value: float
    multiplicity: int
    clause: str  # "a" | "b" | "c"
    word: str
    source: int


@dataclass
class BranchSpectrum:
    n: int
    m: int
    dneg: int
    seed_eigenvalues: np.ndarray
    entries: list[BranchEntry] = field(default_factory=list)

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    @property
    def order(self) -> int:
        return self.n * (self.n + 1) ** self.m

    def minimum(self) -> float:
        return min(e.value for e in self.entries)

    def values(self) -> np.ndarray:
        return np.sort(
            np.repeat(
                np.array([e.value for e in self.entries]),
                [e.multiplicity for e in self.entries],
            )
        )

    def to_json(self) -> list[dict]:
        return [
            {
                "value": e.value,
                "multiplicity": e.multiplicity,
                "provenance": f"clause-{e.clause}:{e.word or '-'}:eta{e.source}",
            }
            for e in sorted(self.entries, key=lambda e: e.value)
        ]


def branch_hypotheses(seed: SignedGraph) -> int:
    """Common negative degree of the seed; raises when the closed form does not apply."""
    if seed.node_count == 0:
        raise UnsupportedHypothesis("empty seed")
    _, neg = degree_arrays(seed)
    if not np.all(neg == neg[0]):
        raise UnsupportedHypothesis("seed nodes do not share one negative degree")
    if not canonical_marking(seed).uniform:
        raise UnsupportedHypothesis("seed canonical marking is not uniform")
    return int(neg[0])


def _split_eigenvalues(seed: SignedGraph, dneg: int) -> tuple[np.ndarray, np.ndarray]:
    eta = eigen.eigvalsh(laplacian(seed))
    idx = int(np.argmin(np.abs(eta - 2 * dneg)))
    if abs(eta[idx] - 2 * dneg) > TIE_TOL:
        raise NumericalError(f"2d^-={2 * dneg} not found among seed eigenvalues {eta.tolist()}")
    return eta, np.delete(eta, idx)


def branch_spectrum(seed: SignedGraph, m: int) -> BranchSpectrum:
    if m < 0:
        raise UnsupportedHypothesis("number of steps must be non-negative")
    if m > MAX_ENUMERATED_STEPS:
        raise UnsupportedHypothesis(
            f"enumerating 2^{m} branch words is too large; use algebraic_conflict for the minimum"
        )
    dneg = branch_hypotheses(seed)
    n = seed.node_count
    eta, rest = _split_eigenvalues(seed, dneg)
    out = BranchSpectrum(n, m, dneg, eta)
    for j, x in enumerate(eta.tolist()):
        for word in map("".join, itertools.product("-+", repeat=m)):
            out.entries.append(BranchEntry(apply_word(x, word, dneg, n), 1, "a", word, j))
    for i in range(1, m):
        mult = n * (n + 1) ** (m - i - 1)
        for j, x in enumerate(rest.tolist()):
            for word in map("".join, itertools.product("-+", repeat=i)):
                out.entries.append(BranchEntry(apply_word(x + 1, word, dneg, n), mult, "b", word, j))
    if m >= 1:
        mult = n * (n + 1) ** (m - 1)
        for j, x in enumerate(rest.tolist()):
            out.entries.append(BranchEntry(x + 1, mult, "c", "", j))
    if out.total_multiplicity != out.order or lemma_total(n, m) != out.order:
        raise NumericalError("branch multiplicities do not add up to the graph order")
    return out


def branch_minimum(seed: SignedGraph, m: int) -> float:
    """Least eigenvalue from the branch form without enumerating words.

    Both branches are increasing and ``f_- < f_+``, so the minimum over all
    words is reached by repeated ``f_-``.
    """
    dneg = branch_hypotheses(seed)
    n = seed.node_count
    eta, rest = _split_eigenvalues(seed, dneg)
    lo = eta.min()
    best = apply_word(float(lo), "-" * m, dneg, n)
    if rest.size and m >= 1:
        x = float(rest.min()) + 1.0
        best = min(best, x)
        for _ in range(1, m):
            x = f_minus(x, dneg, n)
            best = min(best, x)
    return best


def _oracle_conflict(seed: SignedGraph, m: int, budget: int) -> float:
    n = seed.node_count
    if n * (n + 1) ** m > budget:
        raise UnsupportedHypothesis(
            f"G^({m}) has {n * (n + 1) ** m} nodes, over the dense eigensolver budget of {budget}"
        )
    check_budget(n, m)
    return float(eigen.eigvalsh(laplacian(grow(seed, m)))[0])


METHODS = ("auto", "branch", "oracle")


def algebraic_conflict(
    seed: SignedGraph, m: int, method: str = "auto", oracle_budget: int = ORACLE_BUDGET
) -> float:
    """Least signed Laplacian eigenvalue of ``G^(m)``."""
    return conflict_report(seed, m, method, oracle_budget).value


@dataclass(frozen=True)
class ConflictReport:
    value: float
    method: str
    seed_conflict: float
    plus_one_holds: bool
    fixed_point: bool | None = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "method": self.method,
            "seed_conflict": self.seed_conflict,
            "plus_one_holds": self.plus_one_holds,
            "fixed_point": self.fixed_point,
        }


def conflict_report(
    seed: SignedGraph, m: int, method: str = "auto", oracle_budget: int = ORACLE_BUDGET
) -> ConflictReport:
    """Conflict of ``G^(m)`` plus a check of "conflict of the seed plus one".

    The check is reported, never assumed.  ``fixed_point`` tells whether the
    seed conflict equals ``2d^-`` when the branch form applies.
    """
    if method not in METHODS:
        raise UnsupportedHypothesis(f"method must be one of {METHODS}, got {method!r}")
    seed_conflict = float(eigen.eigvalsh(laplacian(seed))[0])
    used = method
    fixed = None
    if method in ("auto", "branch"):
        try:
            value = branch_minimum(seed, m)
            dneg = branch_hypotheses(seed)
            fixed = abs(seed_conflict - 2 * dneg) <= TIE_TOL
            used = "branch"
        except UnsupportedHypothesis:
            if method == "branch":
                raise
            used = "oracle"
    if used == "oracle":
        value = _oracle_conflict(seed, m, oracle_budget)
    plus_one = abs(value - (seed_conflict + 1.0)) <= CONJECTURE_TOL
    return ConflictReport(value, used, seed_conflict, plus_one, fixed)
