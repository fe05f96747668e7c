import pytest

from triway.alloc import DemandTuple
from triway.core import validate_snr


@pytest.fixture
def snr_ref():
    """Reference ThreeWay triple with admissible N3 in {4, 5, 6}."""
    return validate_snr(10, 100, 1000)


@pytest.fixture
def snr_small():
    return validate_snr(4, 16, 64)


@pytest.fixture
def n_tilde():
    """(Ñ1, Ñ2, Ñ3) with N1 = 1."""
    return (7, 5, 3)


@pytest.fixture
def neutralizing_demand():
    """R31 = 3 and R12 = 4 on (7, 5, 3): one level of user 3 needs neutralization."""
    return DemandTuple((0, 3, 4, 0, 0, 0))
