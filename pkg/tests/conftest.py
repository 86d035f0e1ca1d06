from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from nsystems.cex_min import build_R, build_S, build_min_instance
from nsystems.cex_nsa import build_f, build_nsa_instance

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def R2():
    return build_R(2)


@pytest.fixture(scope="session")
def S3():
    return build_S(3)


@pytest.fixture(scope="session")
def inst23():
    return build_min_instance(2, 3)


@pytest.fixture(scope="session")
def nsa42():
    return build_nsa_instance(4, 2)


@pytest.fixture(scope="session")
def f421(nsa42):
    return build_f(nsa42, 1)


def vec(*xs):
    return tuple(F(x) for x in xs)
