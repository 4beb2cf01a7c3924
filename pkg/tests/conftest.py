import random
from fractions import Fraction
import pytest
from core.model import Instance, Item


def make_random_instance(rng: random.Random, n: int, d: int, mu: int, B: int = 10, T: int = 20) -> Instance:
    """Integer-timed instance with sizes in {1..B}/B, arrivals in [0, T - mu], durations in [1, mu]."""
    items = []
    for item_id in range(1, n + 1):
        size = tuple(Fraction(rng.randint(1, B), B) for _ in range(d))
        arrival = rng.randint(0, T - mu)
        duration = rng.randint(1, mu)
        items.append(Item(item_id, Fraction(arrival), Fraction(arrival + duration), size))
    return Instance(d, tuple(items))


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def overlapping_pair() -> Instance:
    # two half-full items overlapping on [1, 2)
    return Instance.from_tuples([(0, 2, ["1/2"]), (1, 3, ["1/2"])])


@pytest.fixture
def crowded_pair() -> Instance:
    # the two items cannot share a bin
    return Instance.from_tuples([(0, 2, ["3/4"]), (1, 3, ["1/2"])])


@pytest.fixture
def random_instances(rng):
    """Desk-scale pool: n <= 10, d <= 2, mu <= 5, B = 10."""
    instances = []
    for _ in range(500):
        n = rng.randint(1, 10)
        d = rng.randint(1, 2)
        mu = rng.randint(1, 5)
        instances.append(make_random_instance(rng, n, d, mu))
    return instances
