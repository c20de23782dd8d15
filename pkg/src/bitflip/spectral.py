"""Eigenvalues of H^T H and the two Tanner bounds.

The Gram matrix is assembled exactly in integers and then diagonalized with
Jacobi rotations.  Rotations are applied in round-robin order: each round
zeroes n/2 disjoint off-diagonal pairs at once, and n-1 rounds visit every
pair once, i.e. one cyclic sweep.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, ConvergenceError, DegenerateSpectrumError
from .gf2 import BinaryMatrix, indices_from_mask

EIGEN_BUDGET = 512
OFF_DIAGONAL_TOL = 1e-10
MAX_SWEEPS = 100


def gram_matrix(H: BinaryMatrix) -> np.ndarray:
    A = H.to_array().astype(np.int64)
    return A.T @ A


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[k], players[m - 1 - k]) for k in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < n and b < n]
        if pairs:
            P = np.array([a for a, _ in pairs])
            Q = np.array([b for _, b in pairs])
            rounds.append((P, Q))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(A: np.ndarray, tol: float = OFF_DIAGONAL_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, in descending order.

    Converges when the off-diagonal Frobenius norm falls below
    ``tol * max(1, ||A||_F)``.
    """
    A = np.array(A, dtype=np.float64)
    n = A.shape[0]
    if A.shape != (n, n) or not np.allclose(A, A.T):
        raise ValueError("expected a square symmetric matrix")
    if n == 1:
        return A.diagonal().copy()
    threshold = tol * max(1.0, float(np.linalg.norm(A)))
    rounds = _round_robin(n)

    def off_norm() -> float:
        off = A - np.diag(A.diagonal())
        return float(np.linalg.norm(off))

    for _ in range(max_sweeps):
        if off_norm() < threshold:
            return np.sort(A.diagonal())[::-1]
        for P, Q in rounds:
            apq = A[P, Q]
            active = apq != 0.0
            if not active.any():
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            with np.errstate(over="ignore"):
                tau = (A[Q, Q] - A[P, P]) / (2.0 * apq)
                # tau = inf gives t = 0, i.e. a rotation-free step
                t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            rp, rq = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = c[:, None] * rp - s[:, None] * rq
            A[Q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = cp * c - cq * s
            A[:, Q] = cp * s + cq * c
            A[P, Q] = 0.0
            A[Q, P] = 0.0
    if off_norm() < threshold:
        return np.sort(A.diagonal())[::-1]
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def check_biregular_connected(H: BinaryMatrix) -> tuple[bool, int | None, bool]:
    """(biregular, right degree or None, Tanner graph connected)."""
    row_w = set(H.row_weights())
    col_w = set(H.column_weights())
    biregular = len(row_w) == 1 and len(col_w) == 1 and 0 not in row_w | col_w
    d_right = next(iter(row_w)) if len(row_w) == 1 else None

    # Tanner graph nodes: variables 0..n-1, checks n..n+r-1
    n, r = H.ncols, H.nrows
    cols = H.columns()
    seen = [False] * (n + r)
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        if v < n:
            nbrs = [n + j for j in indices_from_mask(cols[v])]
        else:
            nbrs = indices_from_mask(H.bits[v - n])
        for w in nbrs:
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return biregular, d_right, all(seen)


@dataclass(frozen=True)
class SpectralSummary:
    lambda1: float
    lambda2: float
    n: int
    c: int | None
    d_right: int | None
    connected: bool
    biregular: bool
    lambda2_definition: str  # "largest_below_lambda1" or "second_with_multiplicity"


def _top_two(eigs: np.ndarray, connected: bool, tol: float) -> tuple[float, float, str]:
    l1 = float(eigs[0])
    if connected:
        below = eigs[eigs < l1 - tol]
        l2 = float(below[0]) if below.size else l1
        return l1, max(l2, 0.0), "largest_below_lambda1"
    l2 = float(eigs[1]) if eigs.size > 1 else l1
    return l1, max(l2, 0.0), "second_with_multiplicity"


def top_two_eigenvalues(H: BinaryMatrix, tol: float = 1e-9, budget: int = EIGEN_BUDGET) -> tuple[float, float]:
    """The two largest eigenvalues of H^T H (lambda2 per connectivity, see SpectralSummary)."""
    s = spectral_summary(H, tol, budget)
    return s.lambda1, s.lambda2


def spectral_summary(H: BinaryMatrix, tol: float = 1e-9, budget: int = EIGEN_BUDGET) -> SpectralSummary:
    n = H.ncols
    if n > budget:
        raise BudgetExceededError(f"n = {n} exceeds dense eigensolver budget {budget}")
    biregular, d_right, connected = check_biregular_connected(H)
    eigs = jacobi_eigenvalues(gram_matrix(H))
    l1, l2, how = _top_two(eigs, connected, tol)
    col_w = set(H.column_weights())
    c = next(iter(col_w)) if len(col_w) == 1 else None
    return SpectralSummary(l1, l2, n, c, d_right, connected, biregular, how)


def tanner_distance_bound(n: int, c: int, lambda1: float, lambda2: float) -> float:
    """Lower bound n (2c - lambda2) / (lambda1 - lambda2) on the minimum distance."""
    if not lambda1 > lambda2:
        raise DegenerateSpectrumError(f"lambda1 = {lambda1} is not above lambda2 = {lambda2}")
    return n * (2 * c - lambda2) / (lambda1 - lambda2)


def tanner_expansion_bound(n: int, c: int, lambda1: float, lambda2: float, t: int) -> float:
    """Lower bound c^2 t / ((lambda1 - lambda2) t / n + lambda2) on |N(T)| for |T| = t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    denom = (lambda1 - lambda2) * t / n + lambda2
    if not denom > 0:
        raise DegenerateSpectrumError("non-positive denominator in expansion bound")
    return c * c * t / denom


def report_bound(value: float) -> dict:
    """12 significant digits plus the implied integer conclusion."""
    rounded = float(f"{value:.12g}")
    return {"value": rounded, "ceiling": math.ceil(rounded)}
