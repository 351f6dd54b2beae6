import pytest

from fibcf import Params, get_xi, growth_table, triple_sequence


@pytest.fixture(scope="session")
def p12():
    return Params(1, 2)


@pytest.fixture(scope="session")
def xi12(p12):
    return get_xi(p12)


@pytest.fixture(scope="session")
def p21():
    return Params(2, 1)


@pytest.fixture(scope="session")
def xi21(p21):
    return get_xi(p21)


@pytest.fixture(scope="session")
def triples30(p12):
    return triple_sequence(p12, 30)


@pytest.fixture(scope="session")
def table30(p12, xi12):
    # the heavyweight shared input for the growth-law criteria
    return growth_table(p12, 30, xi=xi12)
