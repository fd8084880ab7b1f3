import numpy as np
import pytest

from hyperseidel.families import gen_hyperstar, worked_example
from hyperseidel.structure import sample_points
from hyperseidel.verify import VerifySettings


WORKED_SEIDEL = np.array([
    [0, -3, -1, -1, 1],
    [-3, 0, -3, -3, -1],
    [-1, -3, 0, -1, -1],
    [-1, -3, -1, 0, -1],
    [1, -1, -1, -1, 0],
])


@pytest.fixture
def worked():
    return worked_example()


@pytest.fixture
def star43():
    return gen_hyperstar(4, 3)


@pytest.fixture
def settings():
    return VerifySettings(points=tuple(sample_points(20240611)))
