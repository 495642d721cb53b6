"""Latent independent weight of probability distributions on {0,1}^d.

The weight is the largest ``lam`` for which ``P = lam * Q + (1 - lam) * R``
with ``Q`` a product of independent Bernoullis and ``R`` a distribution.
"""

from .dist import (
    Decomposition,
    JointDistribution,
    ProductBernoulli,
    entropy_bits,
    load_distribution,
    make_distribution,
    marginals,
    product_table,
    residual,
    save_distribution,
    weight_of,
)
from .errors import ConsistencyError, ValidationError
from .models import BayesNet, MarkovNet, bn_to_joint, load_fixture, mrf_to_joint
from .solver import (
    Method,
    SolverReport,
    certify,
    decompose,
    oracle_maximin,
    solve_exact,
    solve_heuristic,
    solve_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "BayesNet",
    "ConsistencyError",
    "Decomposition",
    "JointDistribution",
    "MarkovNet",
    "Method",
    "ProductBernoulli",
    "SolverReport",
    "ValidationError",
    "bn_to_joint",
    "certify",
    "decompose",
    "entropy_bits",
    "load_distribution",
    "load_fixture",
    "make_distribution",
    "marginals",
    "mrf_to_joint",
    "oracle_maximin",
    "product_table",
    "residual",
    "save_distribution",
    "solve_exact",
    "solve_heuristic",
    "solve_oracle",
    "weight_of",
]
