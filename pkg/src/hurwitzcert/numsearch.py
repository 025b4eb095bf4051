"""Floating-point exploration harness.

Random PSD matrix sampling, coefficient scans hunting for sign violations,
box-constrained minimization of trace coefficients, and numeric stationarity
residuals.  Everything here is advisory: results guide and sanity-check the
exact certification pipeline but are never certificates themselves, and no
other module imports floating-point results into a proof path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class NumMatrix:
    """A sampled symmetric PSD matrix with spectral metadata."""

    n: int
    entries: np.ndarray
    smallest_eigenvalue: float
    spectral_norm: float

    def __post_init__(self):
        e = self.entries
        if e.shape != (self.n, self.n):
            raise ValueError("entry shape does not match n")
        if np.max(np.abs(e - e.T)) > 1e-12:
            raise ValueError("matrix is not symmetric within 1e-12")


def _power_iteration_norm(M: np.ndarray, tol: float = 1e-12,
                          max_iter: int = 10_000) -> float:
    """Spectral norm of a symmetric PSD matrix by power iteration."""
    n = M.shape[0]
    v = np.ones(n) / np.sqrt(n)
    last = 0.0
    for _ in range(max_iter):
        w = M @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        if abs(norm - last) <= tol * max(1.0, norm):
            return norm
        last = norm
    return last


def random_psd(n: int, rank: int, seed) -> NumMatrix:
    """G @ G.T with G an n-by-rank standard-normal sample, rescaled to
    spectral norm 1.  Deterministic in the seed."""
    if not 1 <= rank <= n:
        raise ValueError(f"rank must be in [1, {n}], got {rank}")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, rank))
    M = G @ G.T
    norm = _power_iteration_norm(M)
    M = M / norm
    eigs = np.linalg.eigvalsh(M)
    return NumMatrix(n=n, entries=M,
                     smallest_eigenvalue=float(eigs[0]),
                     spectral_norm=float(eigs[-1]))


# ---------------------------------------------------------------------------
# Numeric trace-coefficient machinery (batched recurrence)
# ---------------------------------------------------------------------------

def hurwitz_matrices(A: np.ndarray, B: np.ndarray, m: int) -> list:
    """Row m of the sum-over-words table: [S_{m,0}, ..., S_{m,m}].

    Batched: A, B may have shape (..., n, n); the recurrence
    S_{l+1,k} = S_{l,k-1} B + S_{l,k} A runs cellwise with matmul.
    """
    eye = np.broadcast_to(np.eye(A.shape[-1]), A.shape).copy()
    row = [eye]
    for _ in range(m):
        nxt = []
        for k in range(len(row) + 1):
            acc = 0
            if k > 0:
                acc = acc + row[k - 1] @ B
            if k < len(row):
                acc = acc + row[k] @ A
            nxt.append(acc)
        row = nxt
    return row


def trace_coefficients_numeric(A: np.ndarray, B: np.ndarray,
                               m: int) -> np.ndarray:
    """[Tr S_{m,0}, ..., Tr S_{m,m}] along the last two axes."""
    row = hurwitz_matrices(A, B, m)
    return np.stack([np.trace(S, axis1=-2, axis2=-1) for S in row], axis=-1)


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a randomized coefficient scan, reproducible from seeds."""

    n: int
    m: int
    trials: int
    master_seed: int
    rank_a: int
    rank_b: int
    minima: tuple          # per k: smallest Tr[S_{m,k}] observed
    argmin_trials: tuple   # per k: trial index attaining the minimum
    flagged: tuple         # (trial, k, value) below -1e-9 * scale
    tolerance: float = 1e-9

    def argmin_seeds(self, k: int) -> tuple:
        """Seed pair regenerating the argmin matrices for coefficient k."""
        t = self.argmin_trials[k]
        return (self.master_seed, t, 0), (self.master_seed, t, 1)

    def text(self) -> str:
        lines = [
            "coefficient scan",
            f"  n: {self.n}",
            f"  m: {self.m}",
            f"  trials: {self.trials}",
            f"  master_seed: {self.master_seed}",
            f"  rank_a: {self.rank_a}",
            f"  rank_b: {self.rank_b}",
            f"  tolerance: {self.tolerance}",
            f"  flagged: {len(self.flagged)}",
        ]
        for k, (mn, ti) in enumerate(zip(self.minima, self.argmin_trials)):
            lines.append(f"  k={k}: min {mn!r} at trial {ti} "
                         f"(seeds {self.argmin_seeds(k)})")
        for t, k, v in self.flagged:
            lines.append(f"  FLAG trial={t} k={k} value={v!r}")
        return "\n".join(lines)


def scan_coefficients(n: int, m: int, trials: int, seed: int,
                      rank_a: int | None = None,
                      rank_b: int | None = None,
                      batch: int = 512) -> ScanResult:
    """Sample ``trials`` random PSD pairs, compute all Tr[S_{m,k}]
    numerically, record per-k minima, and flag any value below
    -1e-9 * scale (scale = largest |coefficient| in that trial).

    Matrix seeds derive from (seed, trial, 0|1) so any trial is exactly
    reproducible in isolation via random_psd.
    """
    if n > 4 or m > 10:
        raise ValueError("scan is desk-scale: n <= 4 and m <= 10")
    ra = n if rank_a is None else rank_a
    rb = n if rank_b is None else rank_b
    minima = np.full(m + 1, np.inf)
    argmin = np.zeros(m + 1, dtype=int)
    flagged = []
    done = 0
    while done < trials:
        count = min(batch, trials - done)
        A = np.empty((count, n, n))
        B = np.empty((count, n, n))
        for i in range(count):
            A[i] = random_psd(n, ra, (seed, done + i, 0)).entries
            B[i] = random_psd(n, rb, (seed, done + i, 1)).entries
        coeffs = trace_coefficients_numeric(A, B, m)  # (count, m+1)
        scale = np.maximum(1.0, np.max(np.abs(coeffs), axis=1))
        bad = coeffs < -1e-9 * scale[:, None]
        for i, k in zip(*np.nonzero(bad)):
            flagged.append((done + int(i), int(k), float(coeffs[i, k])))
        batch_min = coeffs.min(axis=0)
        batch_arg = coeffs.argmin(axis=0)
        better = batch_min < minima
        argmin[better] = batch_arg[better] + done
        minima = np.minimum(minima, batch_min)
        done += count
    return ScanResult(n=n, m=m, trials=trials, master_seed=seed,
                      rank_a=ra, rank_b=rb,
                      minima=tuple(float(v) for v in minima),
                      argmin_trials=tuple(int(v) for v in argmin),
                      flagged=tuple(flagged))


# ---------------------------------------------------------------------------
# Box-constrained minimization of f(x) = Tr[S_{m,k}(diag(1, x), B)]
# ---------------------------------------------------------------------------

def _objective_and_gradient(x: np.ndarray, B: np.ndarray, m: int, k: int):
    """f and its analytic gradient.

    d/dA Tr[S_{m,k}(A,B)] in direction E is m * Tr[S_{m-1,k} E] (take the
    t^k coefficient of the derivative of Tr[(A+tB)^m]); with A = diag(1, x)
    the partial in x_i is m * [S_{m-1,k}]_{i+1,i+1}.
    """
    n = B.shape[0]
    A = np.diag(np.concatenate(([1.0], x)))
    row_prev = hurwitz_matrices(A, B, m - 1)
    S_prev = row_prev[k] if k <= m - 1 else np.zeros_like(B)
    # one more recurrence step for row m, cell k
    S_m = (row_prev[k - 1] @ B if k > 0 else 0)
    S_m = S_m + (row_prev[k] @ A if k <= m - 1 else 0)
    f = float(np.trace(S_m))
    grad = m * np.diagonal(S_prev)[1:].copy()
    return f, grad


def minimize_box(B, m: int, k: int, starts: int = 32,
                 seed: int = 0, max_iter: int = 500,
                 tol: float = 1e-12):
    """Multi-start projected gradient descent of Tr[S_{m,k}(diag(1,x), B)]
    over the box [0,1]^(n-1); returns (point, value), deterministic in seed.

    Descent steps use backtracking line search and accept only improvements,
    so per-start objective values are monotone nonincreasing.
    """
    if isinstance(B, NumMatrix):
        B = B.entries
    B = np.asarray(B, dtype=float)
    n = B.shape[0]
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    rng = np.random.default_rng(seed)
    best_x, best_f = None, np.inf
    for s in range(starts):
        x = rng.uniform(0.0, 1.0, n - 1) if s else np.full(n - 1, 0.5)
        f, g = _objective_and_gradient(x, B, m, k)
        for _ in range(max_iter):
            step = 1.0
            gn = float(np.linalg.norm(g))
            if gn == 0.0:
                break
            improved = False
            while step > 1e-18:
                cand = np.clip(x - step * g, 0.0, 1.0)
                fc, gc = _objective_and_gradient(cand, B, m, k)
                if fc < f - 1e-14 * max(1.0, abs(f)):
                    moved = float(np.linalg.norm(cand - x))
                    x, f, g = cand, fc, gc
                    improved = True
                    if moved < tol:
                        improved = False  # converged
                    break
                step *= 0.5
            if not improved:
                break
        if f < best_f:
            best_x, best_f = x.copy(), f
    return best_x, best_f


def stationarity_residual(point: Sequence[float], B, m: int,
                          k: int) -> float:
    """|Tr[S_{m,k}(A',B)] - m/(m-k) * Tr[D S_{m-1,k}(A',B)]| at
    A' = diag(1, point), D = diag(1, d) with d_i = 0 iff point_i = 0.

    Vanishes at interior stationary points of the box problem (and at
    minimizers generally, including boundary ones, by the derivative rule
    that motivates D's zero pattern).
    """
    if k >= m:
        raise ValueError("need k < m")
    if isinstance(B, NumMatrix):
        B = B.entries
    B = np.asarray(B, dtype=float)
    x = np.asarray(point, dtype=float)
    A = np.diag(np.concatenate(([1.0], x)))
    D = np.diag(np.concatenate(([1.0], (x != 0.0).astype(float))))
    rows = hurwitz_matrices(A, B, m - 1)
    S_prev_k = rows[k] if k <= m - 1 else np.zeros_like(B)
    S_m_k = (rows[k - 1] @ B if k > 0 else 0) + \
        (rows[k] @ A if k <= m - 1 else 0)
    lhs = float(np.trace(S_m_k))
    rhs = m / (m - k) * float(np.trace(D @ S_prev_k))
    return abs(lhs - rhs)


def finite_difference_gradient(x: np.ndarray, B: np.ndarray, m: int, k: int,
                               h: float = 1e-6) -> np.ndarray:
    """Central finite differences of the box objective (testing aid)."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        fp, _ = _objective_and_gradient(x + e, B, m, k)
        fm, _ = _objective_and_gradient(x - e, B, m, k)
        out[i] = (fp - fm) / (2 * h)
    return out
