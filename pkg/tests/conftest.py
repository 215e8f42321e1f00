import numpy as np
import pytest
from hypothesis import strategies as st


def disk_points(rmax=0.95):
    """Hypothesis strategy for complex points with modulus <= rmax."""
    return st.builds(
        lambda r, t: rmax * np.sqrt(r) * np.exp(2j * np.pi * t),
        st.floats(0, 1), st.floats(0, 1))


@pytest.fixture
def rng():
    return np.random.default_rng(20101010)


def random_points(rng, n, rmax):
    return rmax * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def central_fd(fun, z, h=1e-5):
    """Central differences of a real (or vector) function of a complex point."""
    dx = (fun(z + h) - fun(z - h)) / (2 * h)
    dy = (fun(z + 1j * h) - fun(z - 1j * h)) / (2 * h)
    return dx, dy
