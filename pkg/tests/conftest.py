import pytest

from mldegree import Ring, sym_space, plain_space


@pytest.fixture
def R():
    return Ring(["x", "y", "z"])


@pytest.fixture
def xyz(R):
    return R.gens


@pytest.fixture
def S2():
    return sym_space(2)


@pytest.fixture
def S3():
    return sym_space(3)


@pytest.fixture
def plane():
    return plain_space(["x", "y", "z"], dual_names=["u", "v", "w"])
