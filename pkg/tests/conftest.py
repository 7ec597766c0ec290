import numpy as np
import pytest

from qubitflux import default_config, derive_couplings


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def dc(cfg):
    return derive_couplings(cfg)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
