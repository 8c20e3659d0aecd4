import random

import pytest
from hypothesis import HealthCheck, settings

from sethlab.core import CnfInstance, SimpleGraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_cnf(rng: random.Random, n: int, m: int, arity: int = 3, max_weight: int = 1) -> CnfInstance:
    out = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), rng.randint(1, min(n, arity)))
        out.append([v if rng.random() < 0.5 else -v for v in vs])
    return CnfInstance.from_ints(n, out, [rng.randint(1, max_weight) for _ in out])


def random_graph(rng: random.Random, n: int, p: float, directed: bool = False) -> SimpleGraph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return SimpleGraph.from_edges(n, edges, directed)


def packed(arr) -> int:
    """Boolean array (index = assignment index) to a packed int table."""
    return sum(1 << i for i, b in enumerate(arr) if b)


@pytest.fixture
def rng():
    return random.Random(12345)
