"""Dense symmetric eigensolvers used as verification oracles.

``jacobi_eigh`` is a cyclic Jacobi method with round-robin (parallel)
ordering: each round applies ``n/2`` disjoint plane rotations at once, so a
sweep costs ``n - 1`` vectorised rounds.  ``method="lapack"`` defers to
``numpy.linalg.eigh`` for orders where Jacobi is too slow.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericalError

JACOBI_TOL = 1e-12
MAX_SWEEPS = 100
AUTO_JACOBI_MAX_ORDER = 256
MATCH_TOL = 1e-7


@lru_cache(maxsize=64)
def _rounds(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.int64), np.array(qs, dtype=np.int64)))
        players = [players[0], players[-1], *players[1:-1]]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(
    m, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of ``m``.

    Converged when the off-diagonal Frobenius norm drops below
    ``tol * ||m||_F``.  Raises :class:`NumericalError` after ``max_sweeps``.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DomainError("expected a non-empty square matrix")
    if not np.array_equal(a, a.T):
        raise DomainError("matrix is not exactly symmetric")
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    target = tol * scale
    rounds = _rounds(n)
    off = _off_norm(a)
    sweeps = 0
    while off > target:
        if sweeps >= max_sweeps:
            raise NumericalError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(order {n}, off-diagonal {off:.3e}, target {target:.3e})"
            )
        for p_all, q_all in rounds:
            apq = a[p_all, q_all]
            live = np.abs(apq) > 1e-300
            if not live.any():
                continue
            p, q, apq = p_all[live], q_all[live], apq[live]
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(tau) > 1e150
            safe = np.where(big, 1.0, tau)
            t = np.where(safe >= 0, 1.0, -1.0) / (np.abs(safe) + np.sqrt(1.0 + safe * safe))
            t = np.where(big, 0.5 / np.where(big, tau, 1.0), t)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = ap * c - aq * s
            a[:, q] = ap * s + aq * c
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
        sweeps += 1
        off = _off_norm(a)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigh(m, method: str = "auto") -> tuple[np.ndarray, np.ndarray]:
    """Full symmetric eigendecomposition; ``method`` in auto/jacobi/lapack."""
    a = np.asarray(m, dtype=float)
    if method == "auto":
        method = "jacobi" if a.shape[0] <= AUTO_JACOBI_MAX_ORDER else "lapack"
    if method == "jacobi":
        return jacobi_eigh(a)
    if method == "lapack":
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError("expected a non-empty square matrix")
        w, v = np.linalg.eigh(a)
        return w, v
    raise DomainError(f"unknown eigensolver method {method!r}")


def eigvalsh(m, method: str = "auto") -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if method == "lapack" or (method == "auto" and a.shape[0] > AUTO_JACOBI_MAX_ORDER):
        return np.linalg.eigvalsh(a)
    return eigh(a, method)[0]


def multiset_match(sub, sup, tol: float = MATCH_TOL) -> tuple[bool, list[float]]:
    """Greedily pair every value of ``sub`` with a distinct value of ``sup``.

    Both are sorted; each ``sub`` value takes the smallest unused ``sup``
    value within ``tol``.  Returns ``(ok, unmatched_sub_values)``.
    """
    a = np.sort(np.asarray(sub, dtype=float))
    b = np.sort(np.asarray(sup, dtype=float))
    unmatched = []
    j = 0
    for x in a:
        while j < b.size and b[j] < x - tol:
            j += 1
        if j < b.size and abs(b[j] - x) <= tol:
            j += 1
        else:
            unmatched.append(float(x))
    return not unmatched, unmatched


def multiset_equal(a, b, tol: float = MATCH_TOL) -> bool:
    return len(a) == len(b) and multiset_match(a, b, tol)[0]
