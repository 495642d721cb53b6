"""Distributions on the binary cube {0,1}^d.

Outcomes are encoded as integers: coordinate ``i`` (0-based) of an outcome is
bit ``i`` of its index, so coordinate 1 in one-based terms is the least
significant bit. Every table in this package is indexed this way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ValidationError

MAX_D = 20
NEG_TOL = 1e-12
RENORM_TOL = 1e-9
CERT_TOL = 1e-9


def outcome_bits(index: int, d: int) -> tuple[int, ...]:
    """Bits of outcome ``index`` as a d-tuple, coordinate 0 first."""
    if not 0 <= index < 1 << d:
        raise ValidationError("BAD_OUTCOME", f"index {index} out of range for d={d}")
    return tuple((index >> i) & 1 for i in range(d))


def outcome_index(bits: Sequence[int]) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


def bit_matrix(d: int) -> np.ndarray:
    """(2^d, d) array whose row ``k`` holds the bits of outcome ``k``."""
    return ((np.arange(1 << d)[:, None] >> np.arange(d)) & 1).astype(np.int8)


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """A probability table over {0,1}^d, stored densely.

    Use :func:`make_distribution` to build one from raw user data; the
    constructor only checks invariants.
    """

    probs: np.ndarray

    def __post_init__(self):
        p = _readonly(self.probs)
        n = p.size
        if p.ndim != 1 or n < 2 or n & (n - 1):
            raise ValidationError("BAD_LENGTH", f"table length {n} is not 2^d with d >= 1")
        if not np.all(np.isfinite(p)) or p.min() < 0:
            raise ValidationError("NEGATIVE_MASS", "entries must be finite and nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValidationError("NOT_NORMALIZED", f"entries sum to {p.sum()!r}")
        object.__setattr__(self, "probs", p)

    @property
    def d(self) -> int:
        return self.probs.size.bit_length() - 1

    @property
    def strictly_positive(self) -> bool:
        return bool(self.probs.min() > 0)

    def __getitem__(self, outcome: int) -> float:
        return float(self.probs[outcome])

    def __len__(self) -> int:
        return self.probs.size

    def to_dict(self) -> dict:
        return {"d": self.d, "probs": [float(x) for x in self.probs]}

    @classmethod
    def from_dict(cls, doc: dict) -> "JointDistribution":
        try:
            d, probs = doc["d"], doc["probs"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("BAD_FORMAT", f"missing field {exc}") from None
        return make_distribution(d, probs)


@dataclass(frozen=True, eq=False)
class ProductBernoulli:
    """Independent Bernoulli coordinates with success probabilities ``q``."""

    q: np.ndarray = field()

    def __post_init__(self):
        q = _readonly(np.atleast_1d(self.q))
        if q.ndim != 1 or q.size == 0:
            raise ValidationError("BAD_LENGTH", "q must be a nonempty vector")
        if not np.all((q >= 0) & (q <= 1)):
            raise ValidationError("BAD_PARAMETER", f"q outside [0,1]: {q.tolist()}")
        object.__setattr__(self, "q", q)

    @property
    def d(self) -> int:
        return self.q.size

    def table(self) -> JointDistribution:
        return product_table(self)

    def __repr__(self):
        return f"ProductBernoulli(q={self.q.tolist()})"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """P = weight * Q + (1 - weight) * R with Q a product measure."""

    weight: float
    q_star: ProductBernoulli
    residual: JointDistribution | None
    co_maximizers: list[ProductBernoulli]
    achieving_outcome: int | None

    def reconstruct(self) -> np.ndarray:
        out = self.weight * product_table(self.q_star).probs
        if self.residual is not None:
            out = out + (1.0 - self.weight) * self.residual.probs
        return out


def make_distribution(d: int, table: Sequence[float], *, max_d: int = MAX_D) -> JointDistribution:
    """Validate a raw table and return a :class:`JointDistribution`.

    Tiny negatives (>= -1e-12) are zeroed. A sum off by more than 1e-12 but
    less than 1e-9 is renormalized; anything larger is rejected. Tables that
    already sum to 1 within 1e-12 are kept bit-for-bit.
    """
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 1:
        raise ValidationError("BAD_LENGTH", f"dimension must be a positive integer, got {d!r}")
    if d > max_d:
        raise ValidationError("CAP_EXCEEDED", f"d={d} exceeds the cap {max_d}")
    try:
        p = np.asarray(table, dtype=np.float64)
    except (TypeError, ValueError):
        raise ValidationError("BAD_FORMAT", "table entries must be numbers") from None
    if p.ndim != 1 or p.size != 1 << d:
        raise ValidationError("BAD_LENGTH", f"expected {1 << d} entries, got {p.size}")
    if not np.all(np.isfinite(p)):
        raise ValidationError("NEGATIVE_MASS", "entries must be finite")
    if p.min() < -NEG_TOL:
        raise ValidationError("NEGATIVE_MASS", f"entry {p.min()!r} is negative")
    p = np.where(p < 0, 0.0, p)
    total = p.sum()
    if abs(total - 1.0) >= RENORM_TOL:
        raise ValidationError("NOT_NORMALIZED", f"entries sum to {total!r}")
    if abs(total - 1.0) > NEG_TOL:
        p = p / total
    return JointDistribution(p)


def _as_q(q) -> np.ndarray:
    return q.q if isinstance(q, ProductBernoulli) else ProductBernoulli(q).q


def product_log_table(q) -> np.ndarray:
    """log Q(nu) for every outcome; ``-inf`` where a factor is exactly 0."""
    q = _as_q(q)
    bits = bit_matrix(q.size).astype(bool)
    with np.errstate(divide="ignore"):
        lq, l1q = np.log(q), np.log1p(-q)
    return np.where(bits, lq, l1q).sum(axis=1)


def product_table(q) -> JointDistribution:
    """Table of the product measure with success probabilities ``q``."""
    return JointDistribution(np.exp(product_log_table(q)))


def _table(x, like: np.ndarray | None = None) -> np.ndarray:
    """Probability table of ``x``.

    A plain array whose length is the dimension of ``like`` (rather than its
    number of outcomes) is read as product success probabilities.
    """
    if isinstance(x, JointDistribution):
        return x.probs
    if isinstance(x, ProductBernoulli):
        return product_table(x).probs
    arr = np.asarray(x, dtype=np.float64)
    if like is not None and arr.ndim == 1 and arr.size != like.size and (1 << arr.size) == like.size:
        return product_table(arr).probs
    return arr


def weight_of(P: JointDistribution, Q) -> float:
    """Largest lambda in [0, 1] with P >= lambda * Q entrywise.

    Outcomes where Q vanishes impose no constraint.
    """
    p = _table(P)
    qt = _table(Q, p)
    if p.shape != qt.shape:
        raise ValidationError("DIMENSION_MISMATCH", f"{p.size} vs {qt.size} outcomes")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(qt > 0, p / np.where(qt > 0, qt, 1.0), np.inf)
    return float(min(1.0, max(0.0, ratio.min())))


def marginals(P: JointDistribution) -> ProductBernoulli:
    q = bit_matrix(P.d).T.astype(np.float64) @ P.probs
    return ProductBernoulli(np.clip(q, 0.0, 1.0))


def residual(P: JointDistribution, lam: float, Q, *, tol: float = CERT_TOL) -> JointDistribution:
    """R with P = lam * Q + (1 - lam) * R.

    Raises ``NOT_A_COMPONENT`` if P - lam*Q dips below ``-tol`` anywhere and
    ``DEGENERATE`` when lam is (numerically) 1.
    """
    if lam >= 1.0 - 1e-12:
        raise ValidationError("DEGENERATE", f"no residual for lambda={lam!r}")
    if lam < 0:
        raise ValidationError("BAD_PARAMETER", f"lambda={lam!r} is negative")
    p = _table(P)
    qt = _table(Q, p)
    if p.shape != qt.shape:
        raise ValidationError("DIMENSION_MISMATCH", f"{p.size} vs {qt.size} outcomes")
    diff = p - lam * qt
    worst = diff.min()
    if worst < -tol:
        raise ValidationError(
            "NOT_A_COMPONENT", f"P - lambda*Q reaches {worst:.3e} (tolerance {tol:g})"
        )
    diff = np.clip(diff, 0.0, None)
    return JointDistribution(diff / diff.sum())


def entropy_bits(P: JointDistribution) -> float:
    p = _table(P)
    nz = p[p > 0]
    return float(max(0.0, -(nz * np.log2(nz)).sum()))


def load_distribution(path) -> JointDistribution:
    path = Path(path)
    with open(path) as fh:
        doc = json.load(fh)
    return JointDistribution.from_dict(doc)


def save_distribution(P: JointDistribution, path) -> None:
    with open(path, "w") as fh:
        json.dump(P.to_dict(), fh, indent=2)
        fh.write("\n")


def uniform(d: int) -> JointDistribution:
    return JointDistribution(np.full(1 << d, 1.0 / (1 << d)))


def point_mass(d: int, outcome: int) -> JointDistribution:
    p = np.zeros(1 << d)
    p[outcome] = 1.0
    return JointDistribution(p)
