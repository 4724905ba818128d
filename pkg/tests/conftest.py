import numpy as np
import pytest

from oa_polylab import TracialAlgebra


@pytest.fixture
def m2():
    return TracialAlgebra(((2, 1.0),))


@pytest.fixture
def m3():
    return TracialAlgebra(((3, 1.0),))


@pytest.fixture
def mixed():
    """Weighted two-block algebra, the workhorse for weight-sensitivity."""
    return TracialAlgebra(((2, 0.5), (3, 2.0)))


@pytest.fixture
def commutative():
    return TracialAlgebra(((1, 1.0), (1, 0.5), (1, 2.0), (1, 1.0)))


def as_array(x, block=0):
    return np.array(x.blocks[block])
