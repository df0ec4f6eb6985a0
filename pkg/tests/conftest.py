import mpmath
import pytest

mpmath.mp.dps = 30


@pytest.fixture
def mp():
    return mpmath
