import pytest

from gaspt_rh import oracles


@pytest.fixture(scope="session")
def traces():
    """Boundary data of the named oracles at a = 2, order 32."""
    cache = {}

    def get(name, N=32):
        if (name, N) not in cache:
            cache[name, N] = oracles.boundary_trace(oracles.named(name), 2.0, N)
        return cache[name, N]
    return get
