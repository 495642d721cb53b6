"""Latent independent weight: exact vertex search, grid oracle, local search.

The latent independent weight of ``P`` is the largest ``lam`` such that
``P >= lam * Q`` for some product of Bernoullis ``Q``. Equivalently it is the
maximum over ``q`` of ``min_nu P(nu) / Q(nu | q)``. The exact solver finds it
by visiting every vertex of the per-outcome polyhedra (see
:mod:`latentweight.polytope`); the oracle evaluates the maximin directly on
a grid; the heuristic climbs the maximin from several starting points.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .dist import (
    CERT_TOL,
    Decomposition,
    JointDistribution,
    ProductBernoulli,
    bit_matrix,
    marginals,
    product_table,
    residual,
    weight_of,
)
from .errors import ConsistencyError, ValidationError
from .polytope import FEAS_TOL, log_table, scan_vertices
from .transforms import softplus, y_to_q

MAX_EXACT_D = 6
LOG_TIE_TOL = 1e-9
OVERSHOOT_TOL = 1e-6
ORACLE_BUDGET = 4_000_000_000


class Method(str, enum.Enum):
    EXACT = "EXACT"
    ORACLE = "ORACLE"
    HEURISTIC = "HEURISTIC"


@dataclass
class SolverReport:
    decomposition: Decomposition
    method: Method
    wall_time: float
    per_omega_best: dict[int, tuple[float, np.ndarray, np.ndarray]] = field(default_factory=dict)
    vertex_counts: dict[int, int] = field(default_factory=dict)

    @property
    def weight(self) -> float:
        return self.decomposition.weight

    def to_dict(self) -> dict:
        dec = self.decomposition
        return {
            "lambda": dec.weight,
            "q_star": dec.q_star.q.tolist(),
            "achieving_outcome": dec.achieving_outcome,
            "residual": None if dec.residual is None else dec.residual.to_dict(),
            "co_maximizers": [c.q.tolist() for c in dec.co_maximizers],
            "method": self.method.value,
            "wall_time_s": self.wall_time,
            "vertex_counts": {str(k): v for k, v in sorted(self.vertex_counts.items())},
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


class CertifyResult(NamedTuple):
    valid: bool
    worst_slack: float
    worst_outcome: int


def certify(P: JointDistribution, lam: float, q, *, tol: float = CERT_TOL) -> CertifyResult:
    """Check ``P(nu) >= lam * Q(nu) - tol`` for every outcome."""
    q = q if isinstance(q, ProductBernoulli) else ProductBernoulli(q)
    if q.d != P.d:
        raise ValidationError("DIMENSION_MISMATCH", f"q has {q.d} entries, P has d={P.d}")
    slack = P.probs - lam * product_table(q).probs
    k = int(np.argmin(slack))
    return CertifyResult(bool(slack[k] >= -tol), float(slack[k]), k)


def binding_outcome(P: JointDistribution, q) -> int:
    """Outcome attaining ``min_nu P(nu) / Q(nu | q)`` (smallest index on ties)."""
    qt = product_table(q).probs
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(qt > 0, P.probs / np.where(qt > 0, qt, 1.0), np.inf)
    return int(np.argmin(ratio))


def decompose(
    P: JointDistribution,
    lam: float,
    q,
    *,
    co_maximizers: Sequence[ProductBernoulli] = (),
    achieving_outcome: int | None = None,
) -> Decomposition:
    """Package a certificate ``(lam, q)`` as a :class:`Decomposition`."""
    q = q if isinstance(q, ProductBernoulli) else ProductBernoulli(q)
    R = residual(P, lam, q) if lam < 1.0 - 1e-9 else None
    if achieving_outcome is None:
        achieving_outcome = binding_outcome(P, q)
    return Decomposition(float(lam), q, R, list(co_maximizers) or [q], achieving_outcome)


def _lex_key(a: np.ndarray) -> tuple:
    return tuple(float(x) for x in a)


def solve_exact(
    P: JointDistribution,
    *,
    max_d: int = MAX_EXACT_D,
    force: bool = False,
    tol: float = FEAS_TOL,
    workers: int = 1,
) -> SolverReport:
    """Exact latent independent weight of a strictly positive ``P``.

    Enumerates every vertex of every outcome's polyhedron and keeps the best
    log-objective. Cost grows like C(2^d - 1, d) subsystems, so dimensions
    above ``max_d`` are refused unless ``force`` is set.
    """
    t0 = time.perf_counter()
    if P.d > max_d and not force:
        raise ValidationError(
            "DIMENSION_TOO_LARGE", f"d={P.d} exceeds the exact-solver cap {max_d} (use force)"
        )
    logp = log_table(P)
    found = scan_vertices(logp, range(len(P)), tol=tol, workers=workers)

    per_omega_best = {}
    for omega, verts in found.items():
        if not verts:
            continue
        top = max(v.log_objective for v in verts)
        ties = [v for v in verts if v.log_objective >= top - LOG_TIE_TOL]
        best = min(ties, key=lambda v: _lex_key(v.y))
        per_omega_best[omega] = (best.log_objective, best.y, y_to_q(omega, best.y))
    if not per_omega_best:
        raise ConsistencyError("no feasible vertex found; the polyhedra are pointed and nonempty")

    log_max = max(v[0] for v in per_omega_best.values())
    if log_max > np.log1p(OVERSHOOT_TOL):
        raise ConsistencyError(f"objective exp({log_max!r}) exceeds 1")
    lam = float(min(1.0, np.exp(log_max)))

    cands = []
    for omega, verts in found.items():
        for v in verts:
            if v.log_objective >= log_max - LOG_TIE_TOL:
                cands.append((_lex_key(y_to_q(omega, v.y)), omega))
    cands.sort()
    co, owners = [], []
    for key, omega in cands:
        q = np.array(key)
        if all(np.max(np.abs(q - c)) > 1e-9 for c in co):
            co.append(q)
            owners.append(omega)
    dec = decompose(
        P,
        lam,
        co[0],
        co_maximizers=[ProductBernoulli(c) for c in co],
        achieving_outcome=owners[0],
    )
    return SolverReport(
        dec,
        Method.EXACT,
        time.perf_counter() - t0,
        per_omega_best,
        {omega: len(v) for omega, v in found.items()},
    )


def grid_axis(points: int) -> np.ndarray:
    # i / (points - 1) is correctly rounded, so nested grids share exact values
    return np.arange(points) / (points - 1)


def oracle_maximin(
    P: JointDistribution, grid_points_per_axis: int, *, budget: int = ORACLE_BUDGET
) -> tuple[float, np.ndarray]:
    """Best certified weight over a product grid of ``q`` values, corners included.

    Works when ``P`` has zeros. Returns ``(value, q)`` with ``value`` a lower
    bound on the latent independent weight.
    """
    G, d = int(grid_points_per_axis), P.d
    if G < 2:
        raise ValidationError("BAD_PARAMETER", "grid needs at least 2 points per axis")
    if G ** d * (1 << d) > budget:
        raise ValidationError(
            "GRID_TOO_LARGE", f"{G}^{d} grid points x {1 << d} outcomes exceeds budget {budget}"
        )
    g = grid_axis(G)
    with np.errstate(divide="ignore"):
        logp = np.log(P.probs)
        # lf[b][k] = log P(X_i = b | q_i = g[k])
        lf = np.stack([np.log1p(-g), np.log(g)])

    def step(table):
        # table[..., r, b] -> min over b of table - log P(X = b | q), new grid axis
        # before r; a vanishing factor (q = 0 or 1) makes that ratio vacuous
        with np.errstate(invalid="ignore"):
            zero = table[..., None, :, 0] - lf[0][:, None]
            one = table[..., None, :, 1] - lf[1][:, None]
        zero[..., G - 1, :] = np.inf
        one[..., 0, :] = np.inf
        return np.minimum(zero, one)

    # Minimize over one coordinate's bit at a time. After k steps the table has
    # shape (G,)*k + (2^(d-k),); the trailing axis holds the bits of the
    # coordinates not yet gridded, lowest coordinate in the lowest bit.
    head = step(logp.reshape(1 << (d - 1), 2))

    best_val, best_idx = -np.inf, None
    chunk = max(1, (1 << 22) // max(1, G ** (d - 1)))
    for a in range(0, G, chunk):
        t = head[a:a + chunk]
        for k in range(1, d):
            m = t.shape[-1] // 2
            t = t.reshape(t.shape[:-1] + (m, 2))
            t = step(t)
        vals = t[..., 0]
        flat = int(np.argmax(vals))
        v = vals.flat[flat]
        if v > best_val:
            best_val = v
            best_idx = np.unravel_index(flat, vals.shape)
            best_idx = (best_idx[0] + a,) + tuple(best_idx[1:])
    q = g[np.array(best_idx)]
    return weight_of(P, product_table(q)), q


def _heuristic_objective(Z, logp, bits):
    # log of min_nu P(nu) / Q(nu | sigmoid(Z)) for each row of Z
    lq, l1q = -softplus(-Z), -softplus(Z)
    logq = lq @ bits.T + l1q @ (1 - bits).T
    return np.min(logp[None, :] - logq, axis=1)


def _directions(d: int) -> tuple[np.ndarray, np.ndarray]:
    eye = np.eye(d)
    coord = np.concatenate([eye, -eye])
    pairs = [s * eye[i] + t * eye[j] for i in range(d) for j in range(i + 1, d) for s in (1, -1) for t in (1, -1)]
    return coord, np.array(pairs).reshape(-1, d)


def _ascend(z, logp, bits, coord, diag, step=1.0, min_step=1e-10, max_iter=100_000):
    cur = _heuristic_objective(z[None, :], logp, bits)[0]
    for _ in range(max_iter):
        if step < min_step:
            break
        moved = False
        for dirs in (coord, diag):
            if dirs.size == 0:
                continue
            cand = z[None, :] + step * dirs
            vals = _heuristic_objective(cand, logp, bits)
            k = int(np.argmax(vals))
            if vals[k] > cur + 1e-12:
                z, cur, moved = cand[k], vals[k], True
                break
        if moved:
            step *= 2.0
        else:
            step *= 0.5
    return z, cur


def solve_heuristic(
    P: JointDistribution,
    starts: int = 32,
    seed: int = 0,
    *,
    extra_starts: Sequence[Sequence[float]] = (),
) -> SolverReport:
    """Multi-start local search on ``q -> min_nu P(nu) / Q(nu | q)``.

    Searches in logit coordinates with coordinate moves, falling back to
    two-coordinate diagonal moves at kinks of the min before halving the step.
    Starts are ``starts`` uniform draws, the marginals of ``P`` and any
    ``extra_starts``. Deterministic for a given seed. The reported weight is
    the certified weight of the best ``q`` found, so it never exceeds the
    exact value.
    """
    t0 = time.perf_counter()
    logp = log_table(P)
    d = P.d
    bits = bit_matrix(d).astype(np.float64)
    rng = np.random.default_rng(seed)
    eps = 1e-9
    inits = [marginals(P).q] + [np.asarray(s, dtype=np.float64) for s in extra_starts]
    inits += list(rng.uniform(0.0, 1.0, size=(int(starts), d)))
    coord, diag = _directions(d)

    best_q, best_w = None, -1.0
    for q0 in inits:
        q0 = np.clip(q0, eps, 1 - eps)
        z, _ = _ascend(np.log(q0) - np.log1p(-q0), logp, bits, coord, diag)
        q = 1.0 / (1.0 + np.exp(-z))
        w = weight_of(P, product_table(q))
        if w > best_w:
            best_q, best_w = q, w
    dec = decompose(P, best_w, best_q)
    return SolverReport(dec, Method.HEURISTIC, time.perf_counter() - t0)


def solve_oracle(P: JointDistribution, grid_points_per_axis: int, **kwargs) -> SolverReport:
    """:func:`oracle_maximin` wrapped as a report with its decomposition."""
    t0 = time.perf_counter()
    value, q = oracle_maximin(P, grid_points_per_axis, **kwargs)
    return SolverReport(decompose(P, value, q), Method.ORACLE, time.perf_counter() - t0)
