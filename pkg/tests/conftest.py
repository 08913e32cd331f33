import pytest

from cuspzeta import CuspRay, CuspidalGraph, OrientedEdge, finite_graph
from cuspzeta.graphs import check


def make_two_cusp():
    """Two core vertices joined by a weight-1 edge pair, one constant ray
    on each: parameter 2 entering at x, parameter 3 entering at y."""
    edges = (
        OrientedEdge("p", "x", "y", "r", 1),
        OrientedEdge("r", "y", "x", "p", 1),
    )
    cusps = (
        CuspRay("a", "x", 2, (), (2,)),
        CuspRay("b", "y", 3, (), (3,)),
    )
    return check(CuspidalGraph(("x", "y"), edges, cusps, {"x": 3, "y": 4}))


@pytest.fixture(scope="session")
def two_cusp():
    return make_two_cusp()


def random_multigraph(rng):
    """Connected multigraph with unit weights: a random spanning tree plus
    a few extra edges, allowing parallels and loops."""
    n = rng.randint(3, 7)
    names = [f"v{i}" for i in range(n)]
    pairs = []
    for i in range(1, n):
        pairs.append((names[rng.randrange(i)], names[i]))
    for _ in range(rng.randint(1, 5)):
        if rng.random() < 0.2:
            a = rng.choice(names)
            pairs.append((a, a))
        else:
            a, b = rng.sample(names, 2)
            pairs.append((a, b))
    return finite_graph(pairs)
