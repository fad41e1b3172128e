import pytest

import starcov as sc


@pytest.fixture(scope="session")
def defaults():
    return sc.SystemParams()


@pytest.fixture(scope="session")
def params06(defaults):
    # the asymmetric-split configuration used across the suite
    return sc.merge_params(defaults, {"mu_t": 0.6})


@pytest.fixture(scope="session")
def gains7(params06):
    return sc.effective_gain(sc.generate_channel(params06, seed=7))
