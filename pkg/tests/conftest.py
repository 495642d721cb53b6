import numpy as np
import pytest

from latentweight import make_distribution
from latentweight.models import load_fixture, bn_to_joint, mrf_to_joint


@pytest.fixture(scope="session")
def cancer():
    return bn_to_joint(load_fixture("cancer_bn"))


@pytest.fixture(scope="session")
def cycle():
    return mrf_to_joint(load_fixture("cycle_mrf"))


@pytest.fixture(scope="session")
def pair():
    return mrf_to_joint(load_fixture("pair_mrf"))


@pytest.fixture
def rng():
    return np.random.default_rng(20201)


def random_positive(rng, d, alpha=1.0):
    """Dirichlet draw, floored away from zero so the exact path applies."""
    p = rng.dirichlet(np.full(1 << d, alpha))
    p = np.maximum(p, 1e-6)
    return make_distribution(d, p / p.sum())
