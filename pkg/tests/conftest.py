import numpy as np
import pytest

from subsel.core import CandidateSet, sanitize


def random_front(rng: np.random.Generator, n: int, m: int) -> CandidateSet:
    """Mixed instance generator: spherical / simplex fronts and raw clouds."""
    kind = int(rng.integers(3))
    if kind == 0:
        z = np.abs(rng.standard_normal((n, m)))
        pts = z / np.linalg.norm(z, axis=1, keepdims=True)
    elif kind == 1:
        g = rng.standard_exponential((n, m))
        pts = 0.5 * g / g.sum(axis=1, keepdims=True)
    else:
        pts = rng.random((n, m))
    return sanitize(pts, np.full(m, 1.1))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # pay the jit cost once, before any timed assertions
    from subsel.hypervolume import HvContext, hv, hvc

    ctx = HvContext([1.1, 1.1])
    hv([[0.5, 0.5], [0.2, 0.8]], ctx)
    hvc([0.4, 0.4], [[0.5, 0.5]], ctx)
