import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from chorded_spectra.graph import build_graph


def random_graph(rng: random.Random, n: int, p: float):
    return build_graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, p: float):
    # random spanning tree plus extra edges
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    edges |= {e for e in combinations(range(n), 2) if rng.random() < p}
    return build_graph(n, edges)


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, c in zip(pairs, chosen) if c])


@pytest.fixture
def rng():
    return random.Random(20240521)
