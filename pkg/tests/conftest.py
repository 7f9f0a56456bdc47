import numpy as np
import pytest

from fueterlab.boundary import Domain, hopf_quadrature
from fueterlab.corpus import generate_corpus


@pytest.fixture(scope="session")
def sphere():
    return Domain.unit_sphere()


@pytest.fixture(scope="session")
def quad16():
    return hopf_quadrature(16, 16)


@pytest.fixture(scope="session")
def quad32():
    return hopf_quadrature(32, 32)


@pytest.fixture(scope="session")
def corpus50():
    return generate_corpus(seed=20240801, size=50, max_degree=6)


@pytest.fixture(scope="session")
def np_rng():
    return np.random.default_rng(1234)
