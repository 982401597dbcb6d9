import numpy as np
import pytest

from finpop import (
    DesignKind,
    Population,
    default_bivariate_spec,
    default_univariate_spec,
    generate_bivariate,
    generate_univariate,
)


@pytest.fixture
def pop4():
    """N=4, x=(1,2,3,4), generic y."""
    return Population(x=np.array([1.0, 2.0, 3.0, 4.0]),
                      y=np.array([2.0, 1.0, 5.0, 3.0]))


@pytest.fixture
def pop5():
    """N=5, x=(1..5), generic y."""
    return Population(x=np.arange(1.0, 6.0),
                      y=np.array([3.0, 1.0, 4.0, 1.0, 5.0]))


@pytest.fixture(scope="session")
def benchmark_pop():
    """The synthetic univariate benchmark population (N=5000)."""
    return generate_univariate(default_univariate_spec(), 5000, seed=4)


@pytest.fixture(scope="session")
def benchmark_pop_biv():
    """The synthetic bivariate benchmark population (N=5000)."""
    return generate_bivariate(default_bivariate_spec(), 5000, seed=4)


def random_population(rng, N=None, d=1):
    """A small random population for property-style loops."""
    if N is None:
        N = int(rng.integers(5, 12))
    x = rng.uniform(0.5, 4.0, size=N)
    y = rng.normal(size=(N, d)) * 2.0 + 1.0
    return Population(x=x, y=y)


ALL_DESIGNS = list(DesignKind)
