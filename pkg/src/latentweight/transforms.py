"""The per-outcome objective and its changes of variables.

For an outcome ``omega`` and parameters ``q``, ``f_omega(q) = 1 / Q(omega | q)``.
With ``y_i = (1 - 2 omega_i) * logit(q_i)`` the objective no longer depends on
``omega`` and becomes ``prod_i (1 + exp(y_i))``, whose logarithm is a sum of
softplus terms. Objective values are compared in log form throughout: ``f``
itself overflows as soon as some ``Q(omega | q)`` is tiny.
"""

from __future__ import annotations

import numpy as np

from .dist import outcome_bits, product_log_table
from .errors import ValidationError


def softplus(t):
    """log(1 + e^t), branch-stable."""
    t = np.asarray(t, dtype=np.float64)
    return np.where(t > 0, t + np.log1p(np.exp(-np.abs(t))), np.log1p(np.exp(np.minimum(t, 0.0))))


def sigmoid(t):
    t = np.asarray(t, dtype=np.float64)
    e = np.exp(-np.abs(t))
    return np.where(t >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def _omega_bits(omega, d: int) -> np.ndarray:
    if isinstance(omega, (int, np.integer)):
        return np.array(outcome_bits(int(omega), d))
    bits = np.asarray(omega, dtype=int)
    if bits.shape != (d,) or not np.all((bits == 0) | (bits == 1)):
        raise ValidationError("BAD_OUTCOME", f"omega {omega!r} is not a {d}-bit outcome")
    return bits


def f_omega_q(omega, q) -> float:
    """``1 / Q(omega | q)``; ``inf`` when that probability is 0."""
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    w = _omega_bits(omega, q.size)
    logp = product_log_table(q)[int((w << np.arange(q.size)).sum())]
    return float(np.exp(-logp))


def q_to_y(omega, q) -> np.ndarray:
    q = np.atleast_1d(np.asarray(q, dtype=np.float64))
    w = _omega_bits(omega, q.size)
    if np.any((q <= 0) | (q >= 1)):
        raise ValidationError("BOUNDARY", f"q must lie strictly inside (0,1): {q.tolist()}")
    return (1 - 2 * w) * (np.log(q) - np.log1p(-q))


def y_to_q(omega, y) -> np.ndarray:
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    w = _omega_bits(omega, y.size)
    return sigmoid((1 - 2 * w) * y)


def log_f_y(y) -> float:
    return float(softplus(np.asarray(y, dtype=np.float64)).sum())


def f_omega_y(y) -> tuple[float, float]:
    """``(log f, f)`` for ``f(y) = prod_i (1 + e^{y_i})``; ``f`` may be ``inf``."""
    lf = log_f_y(y)
    with np.errstate(over="ignore"):
        return lf, float(np.exp(lf))


def gradient_f(y) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    lf, f = f_omega_y(y)
    return f * sigmoid(y)


def hessian_f(y) -> np.ndarray:
    """``f * (diag(g * (1 - g)) + g g^T)`` with ``g = sigmoid(y)``."""
    y = np.asarray(y, dtype=np.float64)
    _, f = f_omega_y(y)
    g = sigmoid(y)
    return f * (np.diag(g * sigmoid(-y)) + np.outer(g, g))
