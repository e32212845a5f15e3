import itertools

import numpy as np
import pytest

from frustration.bnb import SolveOptions
from frustration.graph import SignedGraph


def tailed_triangle() -> SignedGraph:
    # negative triangle 0-1-2 with node 3 tied positively to 1 and 2
    return SignedGraph.from_edges(4, [(0, 1, -1), (0, 2, -1), (1, 2, -1), (1, 3, 1), (2, 3, 1)])


TAILED_TWO = (0, 1, 0, 1)  # frustrates (0,2) and (2,3)
TAILED_ONE = (0, 1, 1, 1)  # frustrates (1,2) only


def three_colourable() -> SignedGraph:
    # four negative edges, one positive; (1,3) absent
    return SignedGraph.from_edges(4, [(0, 1, 1), (0, 2, -1), (1, 2, -1), (0, 3, -1), (2, 3, -1)])


def complete(n: int, sign: int = -1) -> SignedGraph:
    return SignedGraph.from_edges(n, [(i, j, sign) for i, j in itertools.combinations(range(n), 2)])


def star(leaves: int, sign: int = 1) -> SignedGraph:
    return SignedGraph.from_edges(leaves + 1, [(0, v, sign) for v in range(1, leaves + 1)])


def random_instance(rng: np.random.Generator, n_lo: int = 4, n_hi: int = 12) -> SignedGraph:
    """Random signed graph with random density and negative fraction."""
    n = int(rng.integers(n_lo, n_hi + 1))
    rho = float(rng.uniform(0.05, 1.0))
    neg = float(rng.uniform(0.0, 1.0))
    edges = [(i, j, -1 if rng.random() < neg else 1)
             for i, j in itertools.combinations(range(n), 2) if rng.random() < rho]
    return SignedGraph.from_edges(n, edges)


# the four speed-up configurations; "fix" means colour fixing with degree priorities
CONFIGS = {
    "none": SolveOptions.plain(),
    "fix": SolveOptions(fix=True, cuts="off", priorities=True),
    "cuts": SolveOptions(fix=False, cuts="lazy", priorities=False),
    "both": SolveOptions(fix=True, cuts="lazy", priorities=True),
}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
