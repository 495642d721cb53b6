"""Bayesian and Markov networks over binary variables, materialized as joint tables.

Variables map to coordinates in declaration order (first declared variable
is coordinate 0, the least significant bit of an outcome index). Bit-string
keys in CPTs and factor tables list the parent/scope variables in the order
they are declared on the node or factor, leftmost character first.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

import numpy as np

from .dist import MAX_D, JointDistribution, bit_matrix
from .errors import ValidationError


def _bitstrings(k: int) -> list[str]:
    return ["".join(bits) for bits in itertools.product("01", repeat=k)]


def _check_keys(table: Mapping[str, float], k: int, what: str, code: str) -> None:
    expected = set(_bitstrings(k))
    got = set(table)
    if got != expected:
        missing, extra = sorted(expected - got), sorted(got - expected)
        raise ValidationError(code, f"{what}: missing rows {missing}, unexpected rows {extra}")


@dataclass(frozen=True)
class BNNode:
    name: str
    parents: tuple[str, ...]
    cpt: Mapping[str, float]


@dataclass(frozen=True)
class BayesNet:
    """Nodes in topological order; ``cpt[bits]`` is P(node = 1 | parents = bits)."""

    nodes: tuple[BNNode, ...]

    def __post_init__(self):
        seen: set[str] = set()
        for node in self.nodes:
            if node.name in seen:
                raise ValidationError("BAD_CPT", f"duplicate node {node.name!r}")
            for p in node.parents:
                if p not in seen:
                    raise ValidationError(
                        "BAD_CPT", f"parent {p!r} of {node.name!r} is not declared before it"
                    )
            _check_keys(node.cpt, len(node.parents), f"CPT of {node.name!r}", "BAD_CPT")
            for key, v in node.cpt.items():
                if not 0.0 <= float(v) <= 1.0:
                    raise ValidationError("BAD_CPT", f"{node.name!r}[{key}] = {v!r} not in [0,1]")
            seen.add(node.name)

    @property
    def names(self) -> list[str]:
        return [n.name for n in self.nodes]

    @classmethod
    def from_dict(cls, doc: dict) -> "BayesNet":
        try:
            nodes = tuple(
                BNNode(str(n["name"]), tuple(n.get("parents", [])), {str(k): float(v) for k, v in n["cpt"].items()})
                for n in doc["nodes"]
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError("BAD_FORMAT", f"malformed Bayesian network: {exc!r}") from None
        return cls(nodes)

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"name": n.name, "parents": list(n.parents), "cpt": dict(n.cpt)} for n in self.nodes
            ]
        }


@dataclass(frozen=True)
class Factor:
    scope: tuple[str, ...]
    weights: Mapping[str, float]


@dataclass(frozen=True)
class MarkovNet:
    """Unnormalized product of nonnegative factors over named binary variables."""

    variables: tuple[str, ...]
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValidationError("BAD_FACTOR", "duplicate variable names")
        known = set(self.variables)
        for f in self.factors:
            unknown = [v for v in f.scope if v not in known]
            if unknown or len(set(f.scope)) != len(f.scope):
                raise ValidationError("BAD_FACTOR", f"bad scope {list(f.scope)}")
            _check_keys(f.weights, len(f.scope), f"factor on {list(f.scope)}", "BAD_FACTOR")
            for key, w in f.weights.items():
                if not np.isfinite(w) or w < 0:
                    raise ValidationError("BAD_FACTOR", f"factor {list(f.scope)}[{key}] = {w!r}")

    @classmethod
    def from_dict(cls, doc: dict) -> "MarkovNet":
        try:
            variables = tuple(str(v) for v in doc["variables"])
            factors = tuple(
                Factor(tuple(f["scope"]), {str(k): float(w) for k, w in f["weights"].items()})
                for f in doc["factors"]
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError("BAD_FORMAT", f"malformed Markov network: {exc!r}") from None
        return cls(variables, factors)

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "factors": [{"scope": list(f.scope), "weights": dict(f.weights)} for f in self.factors],
        }


def _lookup(table: Mapping[str, float], cols: np.ndarray) -> np.ndarray:
    """Evaluate a bit-string keyed table at every row of ``cols`` (outcomes x k)."""
    k = cols.shape[1]
    keys = _bitstrings(k)
    values = np.array([table[key] for key in keys], dtype=np.float64)
    # key "b0 b1 ... b_{k-1}" has index sum b_j * 2^(k-1-j) in product order
    idx = cols @ (1 << np.arange(k - 1, -1, -1)) if k else np.zeros(len(cols), dtype=int)
    return values[idx]


def bn_to_joint(net: BayesNet, *, max_d: int = MAX_D) -> JointDistribution:
    """Product of the conditional probabilities at each configuration."""
    d = len(net.nodes)
    if d > max_d:
        raise ValidationError("CAP_EXCEEDED", f"{d} variables exceed the cap {max_d}")
    if d == 0:
        raise ValidationError("BAD_CPT", "network has no nodes")
    bits = bit_matrix(d).astype(np.int64)
    pos = {name: i for i, name in enumerate(net.names)}
    p = np.ones(1 << d)
    for i, node in enumerate(net.nodes):
        p1 = _lookup(node.cpt, bits[:, [pos[q] for q in node.parents]])
        p *= np.where(bits[:, i] == 1, p1, 1.0 - p1)
    return JointDistribution(p)


def mrf_to_joint(net: MarkovNet, *, max_d: int = MAX_D) -> JointDistribution:
    """Normalized product of factor weights, accumulated in log space."""
    d = len(net.variables)
    if d > max_d:
        raise ValidationError("CAP_EXCEEDED", f"{d} variables exceed the cap {max_d}")
    if d == 0:
        raise ValidationError("BAD_FACTOR", "network has no variables")
    bits = bit_matrix(d).astype(np.int64)
    pos = {name: i for i, name in enumerate(net.variables)}
    logw = np.zeros(1 << d)
    with np.errstate(divide="ignore"):
        for f in net.factors:
            logw += np.log(_lookup(f.weights, bits[:, [pos[v] for v in f.scope]]))
    top = logw.max()
    if not np.isfinite(top):
        raise ValidationError("ALL_ZERO", "every configuration has zero weight")
    w = np.exp(logw - top)
    return JointDistribution(w / w.sum())


def load_bn(path) -> BayesNet:
    with open(path) as fh:
        return BayesNet.from_dict(json.load(fh))


def load_mrf(path) -> MarkovNet:
    with open(path) as fh:
        return MarkovNet.from_dict(json.load(fh))


FIXTURES = ("cancer_bn", "cycle_mrf", "pair_mrf", "cancer_bn_joint", "cycle_mrf_joint", "pair_mrf_joint")


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture (``cancer_bn``, ``pair_mrf_joint``, ...)."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return Path(str(resources.files("latentweight") / "data" / f"{name}.json"))


def load_fixture(name: str):
    """A bundled model (``BayesNet``/``MarkovNet``) or joint table."""
    from .dist import load_distribution

    path = fixture_path(name)
    if name.endswith("_joint"):
        return load_distribution(path)
    return load_bn(path) if name.endswith("_bn") else load_mrf(path)
