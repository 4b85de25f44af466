import pytest

from tropibayes import (
    PositivePolynomial,
    build_sectors,
    coin_model,
    pentagon_linear_model,
    pentagon_surface,
    pentagon_wachspress_model,
    projective_space,
)


@pytest.fixture(scope="session")
def p1():
    return projective_space(1)


@pytest.fixture(scope="session")
def pentagon():
    return pentagon_surface()


@pytest.fixture(scope="session")
def segment_pair():
    """Binary cubics on P^1: f = x0^2 x1, g = (x0+x1)(x0+3x1)(5x0+x1)."""
    f = PositivePolynomial(2, [(1, (2, 1))])
    g = PositivePolynomial(2, [(5, (3, 0)), (21, (2, 1)), (19, (1, 2)), (3, (0, 3))])
    return f, g


@pytest.fixture(scope="session")
def pentagon_pair():
    f = PositivePolynomial(5, [(2, (2, 2, 3, 1, 3)), (3, (2, 1, 2, 2, 4)),
                               (5, (1, 2, 5, 1, 2))])
    g = PositivePolynomial(5, [(7, (3, 3, 2, 0, 3)), (11, (3, 1, 0, 2, 5)),
                               (13, (1, 0, 3, 3, 4)), (17, (0, 2, 7, 1, 1))])
    return f, g


@pytest.fixture(scope="session")
def segment_table(p1, segment_pair):
    return build_sectors(*segment_pair, p1)


@pytest.fixture(scope="session")
def pentagon_table(pentagon, pentagon_pair):
    return build_sectors(*pentagon_pair, pentagon)


@pytest.fixture(scope="session")
def coin2():
    return coin_model(2)


@pytest.fixture(scope="session")
def pentagon_linear():
    return pentagon_linear_model()


@pytest.fixture(scope="session")
def pentagon_wachspress():
    return pentagon_wachspress_model()
