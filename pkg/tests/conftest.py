import random

import pytest

from qso5.bquot import Params, make_b, make_r
from qso5.coeffq import RatQ
from qso5.so5 import localized_e4, localized_e4_e3, make_so5

q = RatQ.q()


@pytest.fixture(scope="session")
def U():
    return make_so5()


@pytest.fixture(scope="session")
def U4():
    return localized_e4()


@pytest.fixture(scope="session")
def U43():
    return localized_e4_e3()


@pytest.fixture(scope="session")
def B11():
    return make_b(Params(1, 1))


@pytest.fixture(scope="session")
def R11():
    return make_r(Params(1, 1))


@pytest.fixture
def rng():
    return random.Random(20240601)
