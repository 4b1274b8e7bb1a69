import pytest

from bfgp.geodesy import all_pairs_distances
from bfgp.graphs import build_butterfly


@pytest.fixture(scope="session")
def bf2():
    g = build_butterfly(2)
    return g, all_pairs_distances(g)


@pytest.fixture(scope="session")
def bf3():
    g = build_butterfly(3)
    return g, all_pairs_distances(g)
