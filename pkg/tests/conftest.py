import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from matmean.linalg import PDMatrix, random_pd

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def rand_pd(dim: int, seed: int, cond: float = 1e3) -> PDMatrix:
    return random_pd(dim, cond, seed)


def rand_pd_pairs(count: int, dims=(1, 2, 3, 4, 5, 6, 7, 8), cond: float = 1e3, seed: int = 0):
    """Deterministic stream of (dim, A, B) triples."""
    for i in range(count):
        dim = dims[i % len(dims)]
        yield dim, rand_pd(dim, 1000 * seed + 2 * i, cond), rand_pd(dim, 1000 * seed + 2 * i + 1, cond)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
