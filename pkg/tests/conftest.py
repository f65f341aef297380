import pytest

from lzcsim.propagator import warm_up


@pytest.fixture(scope="session", autouse=True)
def compiled_kernel():
    # pay the numba compilation cost once, up front
    warm_up()
