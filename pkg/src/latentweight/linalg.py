"""Gaussian elimination with partial pivoting for small dense systems."""

from __future__ import annotations

import numpy as np

PIVOT_TOL = 1e-12


def gauss_solve(A, b, pivot_tol: float = PIVOT_TOL) -> np.ndarray | None:
    """Solve ``A x = b``; returns ``None`` when a pivot falls below ``pivot_tol``."""
    M = np.array(A, dtype=np.float64)
    x = np.array(b, dtype=np.float64)
    n = M.shape[0]
    for k in range(n):
        p = k + int(np.argmax(np.abs(M[k:, k])))
        if abs(M[p, k]) < pivot_tol:
            return None
        if p != k:
            M[[k, p]] = M[[p, k]]
            x[[k, p]] = x[[p, k]]
        f = M[k + 1:, k] / M[k, k]
        M[k + 1:, k:] -= np.outer(f, M[k, k:])
        x[k + 1:] -= f * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - M[k, k + 1:] @ x[k + 1:]) / M[k, k]
    return x


def batched_inverse(M, pivot_tol: float = PIVOT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jordan inversion of a stack of square matrices.

    Returns ``(ok, inv)``: ``ok[j]`` is False when matrix ``j`` hit a pivot
    below ``pivot_tol``, in which case ``inv[j]`` is meaningless.
    """
    M = np.asarray(M, dtype=np.float64)
    m, n, _ = M.shape
    aug = np.zeros((m, n, 2 * n))
    aug[:, :, :n] = M
    aug[:, :, n:] = np.eye(n)
    ok = np.ones(m, dtype=bool)
    rows = np.arange(m)
    for k in range(n):
        p = k + np.argmax(np.abs(aug[:, k:, k]), axis=1)
        ok &= np.abs(aug[rows, p, k]) >= pivot_tol
        top = aug[:, k, :].copy()
        aug[:, k, :] = aug[rows, p, :]
        aug[rows, p, :] = top
        piv = aug[:, k, k]
        aug[:, k, :] /= np.where(ok, piv, 1.0)[:, None]
        f = aug[:, :, k].copy()
        f[:, k] = 0.0
        aug -= f[:, :, None] * aug[:, None, k, :]
    return ok, aug[:, :, n:]
