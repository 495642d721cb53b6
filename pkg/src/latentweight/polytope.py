"""Constraint polyhedra in y-coordinates and exhaustive vertex enumeration.

For an outcome ``omega`` the feasible region is ``{y : A y <= b}`` with one
row per ``nu != omega``: the coefficients flag the coordinates where ``nu``
and ``omega`` differ and ``b = log P(nu) - log P(omega)``.

Rows are ordered by the difference pattern ``m = nu XOR omega`` (row ``r``
has ``m = r + 1``), so the coefficient matrix is the same for every
``omega``. Square subsystems therefore only need to be inverted once; the
inverse is reused against the right-hand side of every outcome.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

import numpy as np

from . import combinatorics
from .dist import JointDistribution, bit_matrix
from .errors import ValidationError
from .linalg import PIVOT_TOL, batched_inverse, gauss_solve
from .transforms import softplus

FEAS_TOL = 1e-9
DEDUP_TOL = 1e-8
_TARGET_ELEMENTS = 1 << 22


def coefficient_matrix(d: int) -> np.ndarray:
    """(2^d - 1, d) 0/1 matrix; row ``r`` holds the bits of ``r + 1``."""
    return bit_matrix(d)[1:].astype(np.float64)


def log_table(P: JointDistribution) -> np.ndarray:
    if not P.strictly_positive:
        zeros = np.flatnonzero(P.probs == 0).tolist()
        raise ValidationError(
            "ZERO_MASS", f"exact path needs P > 0; outcomes {zeros[:8]} have zero mass"
        )
    return np.log(P.probs)


def rhs_matrix(logp: np.ndarray, omegas: Sequence[int]) -> np.ndarray:
    """``B[k, r] = log P(omega_k XOR (r+1)) - log P(omega_k)``."""
    omegas = np.asarray(omegas, dtype=np.int64)
    masks = np.arange(1, logp.size)
    return logp[omegas[:, None] ^ masks[None, :]] - logp[omegas][:, None]


def slack(b: np.ndarray, tol: float = FEAS_TOL) -> np.ndarray:
    return tol * np.maximum(1.0, np.abs(b))


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    omega: int
    d: int
    nu: np.ndarray
    coeffs: np.ndarray
    rhs: np.ndarray
    log_p_omega: float
    tol: float = FEAS_TOL

    @property
    def n_rows(self) -> int:
        return self.rhs.size

    def singleton_rows(self) -> tuple[int, ...]:
        """Rows flipping exactly one coordinate; they form an identity block."""
        return tuple((1 << i) - 1 for i in range(self.d))

    def is_feasible(self, y) -> bool:
        return bool(np.all(self.coeffs @ np.asarray(y) <= self.rhs + slack(self.rhs, self.tol)))


@dataclass(frozen=True, eq=False)
class VertexCandidate:
    y: np.ndarray
    active_rows: tuple[int, ...]
    feasible: bool
    log_objective: float


def build_system(P: JointDistribution, omega: int, *, tol: float = FEAS_TOL) -> ConstraintSystem:
    if not 0 <= omega < len(P):
        raise ValidationError("BAD_OUTCOME", f"omega={omega} out of range")
    logp = log_table(P)
    b = rhs_matrix(logp, [omega])[0]
    nu = omega ^ np.arange(1, len(P))
    return ConstraintSystem(omega, P.d, nu, coefficient_matrix(P.d), b, float(logp[omega]), tol)


def enumerate_square_subsystems(sys: ConstraintSystem) -> Iterator[tuple[int, ...]]:
    """Every d-subset of row indices, lexicographically, without materializing them."""
    return combinatorics.subsets(sys.n_rows, sys.d)


def _log_objective(log_p_omega: float, y: np.ndarray) -> float:
    return float(log_p_omega + softplus(y).sum())


def solve_subsystem(sys: ConstraintSystem, rows: Sequence[int]) -> VertexCandidate | None:
    """Solve the square subsystem on ``rows``; ``None`` when it is singular.

    Feasibility against the full system stops at the first violated row.
    """
    rows = tuple(int(r) for r in rows)
    y = gauss_solve(sys.coeffs[list(rows)], sys.rhs[list(rows)], PIVOT_TOL)
    if y is None:
        return None
    limit = sys.rhs + slack(sys.rhs, sys.tol)
    feasible = True
    for r in range(sys.n_rows):
        if sys.coeffs[r] @ y > limit[r]:
            feasible = False
            break
    return VertexCandidate(y, rows, feasible, _log_objective(sys.log_p_omega, y))


# -- batched scan ---------------------------------------------------------

def _scan_block(A, B, limit, S):
    """Feasible (system, subset, y) triples for one block of subsets ``S``."""
    ok, inv = batched_inverse(A[S])
    idx = np.flatnonzero(ok)
    if idx.size == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64), np.empty((0, A.shape[1]))
    S, inv = S[idx], inv[idx]
    d = A.shape[1]
    # (m, d, W): one solution column per system
    Y = inv @ B[:, S].transpose(1, 2, 0)
    sing = (1 << np.arange(d)) - 1
    cond = np.all(Y <= limit[:, sing].T[None, :, :], axis=1)
    j, w = np.nonzero(cond)
    Yc = Y[j, :, w]
    keep = np.ones(j.size, dtype=bool)
    rest = np.setdiff1d(np.arange(A.shape[0]), sing)
    for lo in range(0, rest.size, 8):
        if not keep.any():
            break
        rows = rest[lo:lo + 8]
        sel = np.flatnonzero(keep)
        vals = Yc[sel] @ A[rows].T
        keep[sel] = np.all(vals <= limit[w[sel]][:, rows], axis=1)
    return w[keep], idx[j[keep]], Yc[keep]


def _dedup_keys(w, y):
    key = np.round(y / DEDUP_TOL)
    _, first = np.unique(np.column_stack([w.astype(np.float64), key]), axis=0, return_index=True)
    return np.sort(first)


def _scan_range(A, B, limit, start, stop, block):
    n, d = A.shape
    ws, ranks, ys = [], [], []
    for offset, S in zip(range(start, stop, block), combinatorics.rank_blocks(n, d, block, start, stop)):
        w, j, y = _scan_block(A, B, limit, S)
        if w.size:
            first = _dedup_keys(w, y)
            ws.append(w[first])
            ranks.append(offset + j[first])
            ys.append(y[first])
    if not ws:
        return np.empty(0, np.int64), np.empty(0, np.int64), np.empty((0, d))
    w, r, y = np.concatenate(ws), np.concatenate(ranks), np.concatenate(ys)
    first = _dedup_keys(w, y)
    return w[first], r[first], y[first]


def _greedy_dedup(ranks, ys):
    order = np.argsort(ranks, kind="stable")
    kept = []
    for i in order:
        if all(np.max(np.abs(ys[i] - ys[k])) > DEDUP_TOL for k in kept):
            kept.append(i)
    return kept


def default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def scan_systems(
    B: np.ndarray,
    log_p_omegas: Sequence[float],
    *,
    tol: float = FEAS_TOL,
    workers: int = 1,
    block: int | None = None,
) -> list[list[VertexCandidate]]:
    """Vertices of the polyhedra ``{y : A y <= B[k]}`` for each row ``k`` of ``B``.

    Every invertible d x d subsystem is inverted once and applied to all
    right-hand sides. Results do not depend on ``workers``: ranges are merged
    in lexicographic order and each vertex is represented by the first
    subsystem (in that order) that produced it.
    """
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    n = B.shape[1]
    d = (n + 1).bit_length() - 1
    A = coefficient_matrix(d)
    limit = B + slack(B, tol)
    total = comb(n, d)
    if block is None:
        block = max(256, _TARGET_ELEMENTS // (B.shape[0] * d))
    workers = max(1, int(workers))
    if workers == 1 or total <= block:
        parts = [_scan_range(A, B, limit, 0, total, block)]
    else:
        ranges = combinatorics.split_ranges(total, workers * 8)
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futures = [ex.submit(_scan_range, A, B, limit, a, b, block) for a, b in ranges]
            parts = [f.result() for f in futures]
    w = np.concatenate([p[0] for p in parts])
    r = np.concatenate([p[1] for p in parts])
    y = np.concatenate([p[2] for p in parts])
    if w.size:
        first = _dedup_keys(w, y)
        w, r, y = w[first], r[first], y[first]

    out = []
    for k, lpo in enumerate(log_p_omegas):
        sel = np.flatnonzero(w == k)
        rk, yk = r[sel], y[sel]
        verts = []
        for i in _greedy_dedup(rk, yk):
            rows = tuple(int(x) for x in combinatorics.unrank([rk[i]], n, d)[0])
            verts.append(VertexCandidate(yk[i].copy(), rows, True, _log_objective(lpo, yk[i])))
        out.append(verts)
    return out


def scan_vertices(
    logp: np.ndarray, omegas: Sequence[int], **kwargs
) -> dict[int, list[VertexCandidate]]:
    """Vertices for each outcome in ``omegas`` given the log-probability table."""
    omegas = [int(o) for o in omegas]
    found = scan_systems(rhs_matrix(logp, omegas), [logp[o] for o in omegas], **kwargs)
    return dict(zip(omegas, found))


def vertices(sys: ConstraintSystem, *, workers: int = 1) -> list[VertexCandidate]:
    """All feasible vertices of one system, deduplicated to 1e-8 in y."""
    return scan_systems(sys.rhs[None, :], [sys.log_p_omega], tol=sys.tol, workers=workers)[0]
