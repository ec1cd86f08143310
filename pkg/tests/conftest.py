import random

import pytest

from laman_enum.geometry import PointSet
from laman_enum.instances import COCIRCULAR_QUAD


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def quad():
    return PointSet(COCIRCULAR_QUAD)


@pytest.fixture
def triangle():
    return PointSet([(0, 0), (1, 0), (0, 1)])
