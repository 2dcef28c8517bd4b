import pytest

from voxfact.graded import GradedVector
from voxfact.presets import affine_sl2, heisenberg, virasoro
from voxfact.scalars import DegreeWindow


@pytest.fixture(scope="session")
def boson():
    return heisenberg()


@pytest.fixture(scope="session")
def vir():
    return virasoro()


@pytest.fixture(scope="session")
def sl2():
    return affine_sl2()


@pytest.fixture(scope="session")
def window6():
    return DegreeWindow(0, 6)


@pytest.fixture(scope="session")
def gen_a():
    return GradedVector.basis((("a", 1),))
