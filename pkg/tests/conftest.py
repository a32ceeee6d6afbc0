import pytest

from pgplane.plane import plane_for_q


@pytest.fixture(scope='session')
def plane3():
    return plane_for_q(3)


@pytest.fixture(scope='session')
def plane4():
    return plane_for_q(4)


@pytest.fixture(scope='session')
def plane5():
    return plane_for_q(5)


@pytest.fixture(scope='session')
def plane7():
    return plane_for_q(7)


@pytest.fixture(scope='session')
def plane9():
    return plane_for_q(9)
