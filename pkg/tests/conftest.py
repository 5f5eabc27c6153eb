import numpy as np
import pytest

from modde.core import Population, SearchSpace, make_rng


def rng_pair(seed):
    """Two generators on the same seed: one for the code under test, one
    for a straight-line oracle replaying the identical draw sequence."""
    return make_rng(seed), make_rng(seed)


def random_population(seed, size=12, n=6, half_width=5.0, with_fitness=True):
    rng = make_rng(seed)
    xs = rng.uniform(-half_width, half_width, (size, n))
    if with_fitness:
        fitness = rng.uniform(-50.0, 50.0, size)
    else:
        fitness = np.full(size, np.nan)
    return Population(xs=xs, fitness=fitness, generation=0)


@pytest.fixture
def space30():
    return SearchSpace.symmetric(30)
