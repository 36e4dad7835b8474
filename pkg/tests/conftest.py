import pytest

from cppforge.field import build_field


@pytest.fixture(scope="session")
def f9():
    return build_field(3, 2)


@pytest.fixture(scope="session")
def f25():
    return build_field(5, 2)


@pytest.fixture(scope="session")
def f81():
    return build_field(3, 4)


@pytest.fixture(scope="session")
def f625():
    return build_field(5, 4)
