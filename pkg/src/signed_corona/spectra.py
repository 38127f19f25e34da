"""Eigenpairs of corona products: closed forms and a dense oracle.

Every closed form returns a :class:`SpectrumReport`.  Its entries carry
provenance tags, and ``complete`` is set when the multiplicities add up to
the matrix order.  Tests compare closed forms with the oracle through
:func:`signed_corona.eigen.multiset_match`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import eigen
from .corona import corona_product
from .errors import DomainError, NumericalError, UnsupportedHypothesis
from .graph import (
    SignedGraph,
    adjacency,
    degree_arrays,
    laplacian,
    net_regularity,
    signless_laplacian,
)
from .marking import MarkingVector, check_marking

KINDS = ("adjacency", "laplacian", "signless")
ROOT_TOL = 1e-10
MAX_BISECTIONS = 200
VECTOR_TOL = 1e-8
_POLE_GUARD = 1e-12
_CLUSTER_TOL = 1e-9


@dataclass
class SpectrumEntry:
    value: float
    multiplicity: int = 1
    vector: np.ndarray | None = None
    provenance: str = ""


@dataclass
class SpectrumReport:
    kind: str
    order: int
    entries: list[SpectrumEntry] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    @property
    def complete(self) -> bool:
        return self.total_multiplicity == self.order

    @property
    def missing(self) -> int:
        return self.order - self.total_multiplicity

    def values(self) -> np.ndarray:
        """All eigenvalues, repeated by multiplicity, ascending."""
        out = np.repeat(
            np.array([e.value for e in self.entries], dtype=float),
            [e.multiplicity for e in self.entries],
        )
        return np.sort(out)

    def minimum(self) -> float:
        return min(e.value for e in self.entries)

    def residuals(self, matrix) -> list[float]:
        """Scaled residual ``|Mx - λx|_inf / ((1+|λ|) |x|_inf)`` of each vector."""
        m = np.asarray(matrix, dtype=float)
        out = []
        for e in self.entries:
            if e.vector is None:
                continue
            x = e.vector
            scale = (1.0 + abs(e.value)) * float(np.max(np.abs(x)))
            out.append(float(np.max(np.abs(m @ x - e.value * x))) / scale)
        return out

    def vectors_ok(self, matrix, tol: float = VECTOR_TOL) -> bool:
        return all(r <= tol for r in self.residuals(matrix))

    def to_json(self) -> list[dict]:
        return [
            {"value": e.value, "multiplicity": e.multiplicity, "provenance": e.provenance}
            for e in sorted(self.entries, key=lambda e: e.value)
        ]


def matrix_of(g: SignedGraph, kind: str) -> np.ndarray:
    if kind == "adjacency":
        return adjacency(g)
    if kind == "laplacian":
        return laplacian(g)
    if kind == "signless":
        return signless_laplacian(g)
    raise DomainError(f"matrix kind must be one of {KINDS}, got {kind!r}")


def dense_symmetric_eigensolve(
    m, kind: str = "matrix", method: str = "auto", vectors: bool = True
) -> SpectrumReport:
    w, v = eigen.eigh(m, method=method)
    report = SpectrumReport(kind=kind, order=int(w.size))
    for idx in range(w.size):
        report.entries.append(
            SpectrumEntry(float(w[idx]), 1, v[:, idx].copy() if vectors else None, "oracle")
        )
    return report


def graph_spectrum(g: SignedGraph, kind: str, method: str = "auto") -> SpectrumReport:
    return dense_symmetric_eigensolve(matrix_of(g, kind), kind=kind, method=method, vectors=False)


def least_laplacian_eigenvalue(g: SignedGraph, method: str = "auto") -> float:
    return float(eigen.eigvalsh(laplacian(g), method=method)[0])


def corona_matrix(kind, g1, mu1, g2, mu2) -> np.ndarray:
    return matrix_of(corona_product(g1, mu1, g2, mu2), kind)


# -- helpers ---------------------------------------------------------------


def _complement_of_ones(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of ``m`` on the orthogonal complement of the all-ones vector.

    ``m`` must have the all-ones vector as an eigenvector; the returned
    vectors are orthonormal and orthogonal to it.
    """
    k = m.shape[0]
    if k == 1:
        return np.empty(0), np.empty((1, 0))
    basis, _ = np.linalg.qr(np.column_stack([np.ones(k), np.eye(k)[:, 1:]]))
    q = basis[:, 1:]
    restricted = q.T @ m @ q
    restricted = (restricted + restricted.T) / 2.0
    w, y = eigen.eigh(restricted)
    return w, q @ y


def _attach_blocks(x: np.ndarray, mu1: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """``[x; coeffs[0]*diag(mu1)x; ...; coeffs[k-1]*diag(mu1)x]``."""
    w = mu1 * x
    return np.concatenate([x, (coeffs[:, None] * w[None, :]).ravel()])


def _copy_vector(y: np.ndarray, i: int, n: int) -> np.ndarray:
    """``[0; y ⊗ e_i]`` in the corona layout."""
    z = np.zeros(n * (1 + y.size))
    z[n + np.arange(y.size) * n + i] = y
    return z


def _copy_eigenpairs(report, values, vecs, n, shift, tag, with_vectors) -> None:
    for j in range(values.size):
        if with_vectors:
            for i in range(n):
                report.entries.append(
                    SpectrumEntry(
                        float(values[j] + shift), 1, _copy_vector(vecs[:, j], i, n), f"{tag}[j={j},i={i}]"
                    )
                )
        else:
            report.entries.append(SpectrumEntry(float(values[j] + shift), n, None, f"{tag}[j={j}]"))


def _inputs(g1, mu1, g2, mu2):
    check_marking(g1, mu1, "mu1")
    check_marking(g2, mu2, "mu2")
    if g1.node_count == 0 or g2.node_count == 0:
        raise DomainError("both corona factors need at least one node")


# -- adjacency -------------------------------------------------------------


def adjacency_spectrum_corona(
    g1: SignedGraph,
    mu1: MarkingVector,
    g2: SignedGraph,
    mu2: MarkingVector,
    vectors: bool = True,
    method: str = "auto",
) -> SpectrumReport:
    """Adjacency eigenpairs of ``G1 ∘ G2`` for net-regular ``G2``.

    Each adjacency eigenvalue ``λ`` of ``G1`` gives the two roots of
    ``x - k/(x - d) = λ``.  When ``G2`` is uniformly marked, every
    eigenpair ``(η, Y)`` of ``G2`` with ``Y ⟂ 1`` contributes ``η`` with
    multiplicity ``n``.
    """
    _inputs(g1, mu1, g2, mu2)
    d = net_regularity(g2)
    if d is None:
        raise UnsupportedHypothesis("second factor is not net-regular")
    n, k = g1.node_count, g2.node_count
    report = SpectrumReport(kind="adjacency", order=n * (1 + k))
    a2 = adjacency(g2)
    m2 = mu2.values.astype(float)
    if not np.allclose(a2 @ m2, d * m2, atol=1e-12):
        report.warnings.append(
            "marking of G2 is not an eigenvector of A(G2) for its net-regularity; "
            "the quadratic roots are not guaranteed to be eigenvalues"
        )
    lam, xs = eigen.eigh(adjacency(g1), method=method)
    m1 = mu1.values.astype(float)
    for i in range(n):
        disc = math.sqrt((d - lam[i]) ** 2 + 4 * k)
        for sign, tag in ((1, "+"), (-1, "-")):
            root = (d + lam[i] + sign * disc) / 2.0
            vec = None
            if vectors:
                if abs(root - d) <= _POLE_GUARD:
                    report.warnings.append(f"root {root} sits on the eigenvector pole d={d}")
                else:
                    vec = _attach_blocks(xs[:, i], m1, m2 / (root - d))
            report.entries.append(SpectrumEntry(root, 1, vec, f"adjacency:quadratic{tag}[i={i}]"))
    if mu2.uniform:
        eta, ys = _complement_of_ones(a2)
        _copy_eigenpairs(report, eta, ys, n, 0.0, "adjacency:copy", vectors)
    return report


# -- Laplacian ---------------------------------------------------------------


def _bisect(func, lo: float, hi: float, tol: float, max_iter: int) -> float:
    """Root of an increasing ``func`` with ``func < 0`` near ``lo`` and ``> 0`` near ``hi``."""
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if func(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def secular_roots(
    lam: float,
    k: int,
    poles: np.ndarray,
    weights: np.ndarray,
    tol: float = ROOT_TOL,
    max_iter: int = MAX_BISECTIONS,
) -> np.ndarray:
    """All real roots of ``x - k - sum_j w_j/(x - p_j) = lam``.

    The left side increases strictly between consecutive distinct poles and
    runs from -inf to +inf there, so there is exactly one root per gap plus
    one on each side.  ``poles`` must be distinct and ascending, all weights
    positive.
    """
    poles = np.asarray(poles, dtype=float)
    weights = np.asarray(weights, dtype=float)

    def g(x):
        return x - k - float(np.sum(weights / (x - poles))) - lam

    if poles.size == 0:
        return np.array([k + lam])
    left = poles[0] - k - abs(lam) - 2.0
    right = poles[-1] + k + abs(lam) + 2.0
    if not (g(left) < 0 < g(right)):
        raise NumericalError(
            f"secular equation for lambda={lam} is not bracketed by [{left}, {right}]"
        )
    edges = [left, *poles.tolist(), right]
    return np.array([_bisect(g, edges[t], edges[t + 1], tol, max_iter) for t in range(len(edges) - 1)])


def _group_poles(values: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(values)
    vals, wts = values[order], weights[order]
    poles, agg = [], []
    for v, w in zip(vals.tolist(), wts.tolist()):
        if poles and abs(v - poles[-1]) <= _CLUSTER_TOL:
            agg[-1] += w
        else:
            poles.append(v)
            agg.append(w)
    return np.array(poles), np.array(agg)


def laplacian_secular_spectrum(
    g1: SignedGraph,
    mu1: MarkingVector,
    g2: SignedGraph,
    mu2: MarkingVector,
    form: str = "diagonal",
    vectors: bool = True,
    method: str = "auto",
) -> SpectrumReport:
    """Signed Laplacian eigenvalues of ``G1 ∘ G2`` from a secular equation.

    ``form="diagonal"`` solves ``x - k - sum_j 1/(x - (2 d_j^- + 1)) = λ_i``
    for each Laplacian eigenvalue ``λ_i`` of ``G1``; the report is complete
    only when the negative degrees of ``G2`` are pairwise distinct.

    ``form="exact"`` replaces the diagonal poles by the eigen-decomposition
    ``L(G2) = sum_l η_l Y_l Y_l^T``; poles ``η_l + 1`` carry weights
    ``(mu2 · Y_l)^2``.  Adding the eigenvalues ``η_l + 1`` whose eigenspace
    directions are orthogonal to ``mu2`` gives the full spectrum.
    """
    _inputs(g1, mu1, g2, mu2)
    if form not in ("diagonal", "exact"):
        raise DomainError(f"form must be 'diagonal' or 'exact', got {form!r}")
    n, k = g1.node_count, g2.node_count
    report = SpectrumReport(kind="laplacian", order=n * (1 + k))
    m1 = mu1.values.astype(float)
    m2 = mu2.values.astype(float)
    lam, xs = eigen.eigh(laplacian(g1), method=method)
    _, neg = degree_arrays(g2)

    if form == "diagonal":
        node_poles = 2.0 * neg + 1.0
        poles, weights = _group_poles(node_poles, np.ones(k))
        if poles.size < k:
            report.warnings.append(
                f"negative degrees of G2 repeat ({poles.size} distinct of {k}); spectrum is partial"
            )
        coeff_poles = node_poles
    else:
        eta, ys = eigen.eigh(laplacian(g2), method=method)
        theta = eta + 1.0
        proj = ys.T @ m2
        poles_all, idx_groups = [], []
        order = np.argsort(theta)
        for l in order.tolist():
            if poles_all and abs(theta[l] - poles_all[-1]) <= _CLUSTER_TOL:
                idx_groups[-1].append(l)
            else:
                poles_all.append(float(theta[l]))
                idx_groups.append([l])
        poles, weights, live_groups = [], [], []
        for val, grp in zip(poles_all, idx_groups):
            w = float(np.sum(proj[grp] ** 2))
            if w > 1e-12 * k:
                poles.append(val)
                weights.append(w)
                live_groups.append(grp)
            # directions of this eigenspace orthogonal to mu2 stay eigenvectors
            basis = ys[:, grp]
            if w > 1e-12 * k:
                c = basis.T @ m2
                c /= np.linalg.norm(c)
                comp = np.linalg.svd(np.eye(len(grp)) - np.outer(c, c))[0][:, : len(grp) - 1]
                free = basis @ comp
            else:
                free = basis
            if free.shape[1]:
                _copy_eigenpairs(
                    report, np.full(free.shape[1], val), free, n, 0.0, "laplacian:exact-copy", vectors
                )
        poles, weights = np.array(poles), np.array(weights)

    for i in range(n):
        roots = secular_roots(float(lam[i]), k, poles, weights)
        for r_idx, root in enumerate(roots.tolist()):
            vec = None
            if vectors:
                if form == "diagonal":
                    gap = root - coeff_poles
                    if np.min(np.abs(gap)) <= _POLE_GUARD:
                        report.warnings.append(f"root {root} sits on a pole; vector omitted")
                    else:
                        vec = _attach_blocks(xs[:, i], m1, -m2 / gap)
                else:
                    y = -(ys @ ((ys.T @ m2) / (root - theta)))
                    vec = _attach_blocks(xs[:, i], m1, y)
            report.entries.append(
                SpectrumEntry(root, 1, vec, f"laplacian:secular-{form}[i={i},r={r_idx}]")
            )
    return report


def laplacian_equal_negdeg_spectrum(
    g1: SignedGraph,
    mu1: MarkingVector,
    g2: SignedGraph,
    mu2: MarkingVector,
    vectors: bool = True,
    method: str = "auto",
) -> SpectrumReport:
    """Signed Laplacian eigenpairs of ``G1 ∘ G2`` when all nodes of ``G2``
    share one negative degree ``d^-``.

    Each eigenvalue ``λ`` of ``L(G1)`` yields the two roots of
    ``(x - (2d^- + 1))(x - λ - k) = k``.  With ``G2`` uniformly marked, each
    Laplacian eigenpair ``(η, Y)`` of ``G2`` with ``Y ⟂ 1`` adds ``η + 1``
    with multiplicity ``n``.
    """
    _inputs(g1, mu1, g2, mu2)
    _, neg = degree_arrays(g2)
    if not np.all(neg == neg[0]):
        raise UnsupportedHypothesis("nodes of G2 do not share one negative degree")
    dneg = int(neg[0])
    n, k = g1.node_count, g2.node_count
    report = SpectrumReport(kind="laplacian", order=n * (1 + k))
    l2 = laplacian(g2)
    m1 = mu1.values.astype(float)
    m2 = mu2.values.astype(float)
    if not np.allclose(l2 @ m2, 2 * dneg * m2, atol=1e-12):
        report.warnings.append(
            "marking of G2 is not an eigenvector of L(G2) for 2d^-; "
            "the quadratic roots are not guaranteed to be eigenvalues"
        )
    pole = 2 * dneg + 1
    lam, xs = eigen.eigh(laplacian(g1), method=method)
    for i in range(n):
        s = lam[i] + k
        disc = math.sqrt((pole - s) ** 2 + 4 * k)
        for sign, tag in ((1, "+"), (-1, "-")):
            root = (pole + s + sign * disc) / 2.0
            vec = None
            if vectors:
                if abs(root - pole) <= _POLE_GUARD:
                    report.warnings.append(f"root {root} sits on the pole {pole}")
                else:
                    vec = _attach_blocks(xs[:, i], m1, -m2 / (root - pole))
            report.entries.append(SpectrumEntry(root, 1, vec, f"laplacian:quadratic{tag}[i={i}]"))
    if mu2.uniform:
        eta, ys = _complement_of_ones(l2)
        _copy_eigenpairs(report, eta, ys, n, 1.0, "laplacian:copy", vectors)
    return report


def signless_spectrum(
    g1: SignedGraph,
    mu1: MarkingVector,
    g2: SignedGraph,
    mu2: MarkingVector,
    theorem: str = "equal-negdeg",
    form: str = "diagonal",
    vectors: bool = True,
    method: str = "auto",
) -> SpectrumReport:
    """Signless Laplacian eigenpairs via ``Q(G) = L(G with all signs flipped)``.

    Flipping every edge of ``G1 ∘ G2`` equals the corona of the flipped
    factors with ``mu1`` negated, so the Laplacian closed forms apply with
    positive degrees in place of negative ones.
    """
    _inputs(g1, mu1, g2, mu2)
    flipped = (g1.negated(), MarkingVector(-mu1.values, mu1.scheme), g2.negated(), mu2)
    if theorem == "equal-negdeg":
        rep = laplacian_equal_negdeg_spectrum(*flipped, vectors=vectors, method=method)
    elif theorem == "secular":
        rep = laplacian_secular_spectrum(*flipped, form=form, vectors=vectors, method=method)
    else:
        raise DomainError(f"theorem must be 'equal-negdeg' or 'secular', got {theorem!r}")
    rep.kind = "signless"
    for e in rep.entries:
        e.provenance = "signless:" + e.provenance
    return rep
