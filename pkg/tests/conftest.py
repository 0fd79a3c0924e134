import random

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

from twsparse.graph import Graph

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_connected(n, p, seed):
    """Connected G(n, p): a random spanning path is added to the sample."""
    G = nx.gnp_random_graph(n, p, seed=seed)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    G.add_edges_from(zip(order, order[1:]))
    return Graph.from_edges(sorted(G.edges()), range(n))


def grid(rows, cols):
    G = nx.convert_node_labels_to_integers(nx.grid_2d_graph(rows, cols), ordering="sorted")
    return Graph.from_edges(sorted(G.edges()), G.nodes())


@pytest.fixture
def k4():
    return Graph.from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def random_two_pair_instance(seed, n_max=60, ks=(1, 2, 3)):
    """Random connected host with two routable pairs; retries until both route."""
    from twsparse.routing import routable

    rng = random.Random(seed)
    while True:
        n = rng.randint(8, n_max)
        p = rng.uniform(1.5, 4.0) / n
        g = random_connected(n, p, rng.randrange(1 << 30))
        k1, k2 = rng.choice(ks), rng.choice(ks)
        verts = list(g.vertices)
        a = rng.sample(verts, 2 * k1)
        b = rng.sample(verts, 2 * k2)
        S1, T1, S2, T2 = a[:k1], a[k1:], b[:k2], b[k2:]
        if routable(g, S1, T1) and routable(g, S2, T2):
            return g, S1, T1, S2, T2
