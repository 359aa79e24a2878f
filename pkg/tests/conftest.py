import pytest

from tropmut.corpus import corpus, e1, e2


@pytest.fixture(scope="session")
def E1():
    return e1()


@pytest.fixture(scope="session")
def E2():
    return e2()


@pytest.fixture(scope="session")
def random_inputs():
    return corpus(100, seed=0)
