import pytest

from siot import det_rng, gen_params, preset


@pytest.fixture(scope="session")
def p431():
    return preset("p431")


@pytest.fixture(scope="session")
def p2591():
    return preset("p2591")


@pytest.fixture(scope="session")
def set3():
    """Twin of p431 with the roles swapped: side A on the 3-power tower."""
    return gen_params(3, 3, 2, 4, rng=det_rng(b"tests/set3"))
