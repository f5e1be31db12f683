import math

import numpy as np
import pytest

from wedgemellin import WedgeParams, builtin_test_family, make_grid


@pytest.fixture(scope="session")
def wedge_pi():
    return WedgeParams(math.pi)


@pytest.fixture(scope="session")
def wedge_half():
    return WedgeParams(math.pi / 2)


@pytest.fixture(scope="session")
def wedge_reentrant():
    return WedgeParams(1.5 * math.pi)


@pytest.fixture(scope="session")
def grid_pi(wedge_pi):
    return make_grid(-12.0, 12.0, 512, 48, wedge_pi)


@pytest.fixture(scope="session")
def family_pi(wedge_pi):
    return builtin_test_family(wedge_pi)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240823)
