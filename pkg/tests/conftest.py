import numpy as np
import pytest

from ges4.basis import explicit_basis
from ges4.circuit import BRANCH_PRIME, BRANCH_DOUBLE_PRIME, ges_target_state


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def basis16():
    # the explicit sixteen-state basis is immutable; build it once
    return explicit_basis()


@pytest.fixture(scope="session")
def target_prime():
    return ges_target_state(BRANCH_PRIME)


@pytest.fixture(scope="session")
def target_dprime():
    return ges_target_state(BRANCH_DOUBLE_PRIME)
