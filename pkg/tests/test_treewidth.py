import networkx as nx
from hypothesis import given, strategies as st

from conftest import grid, random_connected
from oracles import treewidth as treewidth_oracle
from twsparse.graph import Graph
from twsparse.treewidth import exact_treewidth


def from_nx(G):
    return Graph.from_edges(sorted(G.edges()), G.nodes())


def test_examples():
    assert exact_treewidth(from_nx(nx.balanced_tree(2, 3))) == 1
    assert exact_treewidth(from_nx(nx.complete_graph(5))) == 4
    assert exact_treewidth(grid(4, 4)) == 4
    assert exact_treewidth(from_nx(nx.petersen_graph())) == 4
    assert exact_treewidth(from_nx(nx.cycle_graph(9))) == 2


@given(st.integers(0, 10_000), st.integers(4, 7))
def test_matches_elimination_oracle(seed, n):
    g = random_connected(n, 0.45, seed)
    G = nx.Graph([(e.u, e.v) for e in g.edges])
    G.add_nodes_from(g.vertices)
    assert exact_treewidth(g) == treewidth_oracle(G)


def test_multigraph_and_disconnected():
    g = Graph([0, 1, 2, 3], [(0, 0, 1, "red"), (1, 0, 1, "blue"), (2, 2, 3, "none")])
    assert exact_treewidth(g) == 1
