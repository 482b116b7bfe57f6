import warnings

import pytest

from qfree import coloring, io, search, subgraph

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from starlette.testclient import TestClient

from qfree.service import app


@pytest.fixture(scope="session")
def client():
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="session")
def g7():
    return io.g7_graph()


@pytest.fixture(scope="session")
def builtins():
    return {name: coloring.builtin(name) for name in coloring.BUILTIN_NAMES}


@pytest.fixture(scope="session")
def g4_result():
    """Optimal Q3-free subgraph of Q4 (3 omitted edges), from the exact solver."""
    r = search.exact_min_hitting(4, 3)
    assert r.optimal and r.best.omitted_count == 3
    return r


@pytest.fixture(scope="session")
def g5_result():
    """Optimal Q3-free subgraph of Q5 (8 omitted edges).  This is the one
    expensive session fixture (tens of seconds)."""
    r = search.exact_min_hitting(5, 3)
    assert r.optimal and r.best.omitted_count == 8
    return r


@pytest.fixture(scope="session")
def g4(g4_result):
    return g4_result.best


@pytest.fixture(scope="session")
def g5(g5_result):
    return g5_result.best


def random_free_graph(rng, n, d, density=0.5):
    """A random d-free subgraph of Q_n: random edge set, then violations
    repaired by deleting one edge of each fully-present subcube."""
    from qfree.core import edge_index, total_edges

    mask = 0
    for i in range(total_edges(n)):
        if rng.random() < density:
            mask |= 1 << i
    G = subgraph.CubeSubgraph(n, mask)
    while True:
        bad = subgraph.violations(G, d)
        if not bad:
            return G
        for s in bad:
            from qfree.core import subcube_edges

            edges = list(subcube_edges(s))
            victim = edge_index(rng.choice(edges))
            G = subgraph.CubeSubgraph(n, G.present & ~(1 << victim))
