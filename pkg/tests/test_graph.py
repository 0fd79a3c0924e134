import json

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import grid, random_connected
from twsparse.exceptions import FormatError, InvariantError, NotFoundError
from twsparse.graph import (
    BLUE,
    RED,
    Edit,
    Graph,
    MinorModel,
    TopoWitness,
    edit,
    graph_from_dict,
    graph_to_dict,
    parse_edge_list,
    read_graph,
    suppress_degree2,
    tau,
    verify_minor_model,
    verify_topo_witness,
)


def triangle(colors=("none", "none", "none")):
    return Graph([0, 1, 2], [(0, 0, 1, colors[0]), (1, 1, 2, colors[1]), (2, 2, 0, colors[2])])


def test_no_self_loops_or_same_color_parallels():
    with pytest.raises(InvariantError):
        Graph([0], [(0, 0, 0, "none")])
    with pytest.raises(InvariantError):
        Graph([0, 1], [(0, 0, 1, RED), (1, 1, 0, RED)])
    g = Graph([0, 1], [(0, 0, 1, RED), (1, 1, 0, BLUE)])
    assert g.degree(0) == 2 and g.edges_between(0, 1) == (0, 1)


def test_contract_triangle_merges_same_color():
    r = edit(triangle(), Edit("contract_edge", 0))
    assert r.graph.vertices == (0, 2)
    assert r.graph.number_of_edges() == 1
    assert r.graph.edges[0].id == 1


def test_contract_triangle_keeps_distinct_colors():
    r = edit(triangle((RED, RED, BLUE)), Edit("contract_edge", 0))
    assert r.graph.number_of_edges() == 2
    assert {e.color for e in r.graph.edges} == {RED, BLUE}


def test_delete_middle_of_path():
    g = Graph.from_edges([(0, 1), (1, 2)])
    r = edit(g, Edit("delete_vertex", 1))
    assert r.graph.vertices == (0, 2) and r.graph.number_of_edges() == 0


def test_missing_target():
    with pytest.raises(NotFoundError):
        edit(triangle(), Edit("delete_edge", 9))


def test_k4_contraction_drops_one_vertex(k4):
    for e in k4.edges:
        r = edit(k4, Edit("contract_edge", e.id))
        assert r.graph.number_of_vertices() == 3
        assert r.graph.number_of_edges() == 3


@given(st.integers(0, 10_000), st.lists(st.integers(0, 50), min_size=1, max_size=8))
def test_replayed_model_is_valid(seed, picks):
    g = random_connected(12, 0.25, seed)
    host, model = g, MinorModel.identity(g)
    for p in picks:
        if g.number_of_edges() == 0:
            break
        e = g.edges[p % g.number_of_edges()]
        kind = "contract_edge" if p % 3 else "delete_edge"
        r = edit(g, Edit(kind, e.id))
        g, model = r.graph, r.update(model)
    assert verify_minor_model(host, g, model).ok


def test_identity_model_and_overlap(k4):
    assert verify_minor_model(k4, k4, MinorModel.identity(k4)).ok
    bad = MinorModel({0: frozenset([0, 1]), 1: frozenset([1]), 2: frozenset([2]), 3: frozenset([3])},
                     MinorModel.identity(k4).edge_map)
    assert "disjointness" in verify_minor_model(k4, k4, bad).clauses()


def test_suppress_path_and_cycle_and_star():
    g, w = suppress_degree2(Graph.from_edges([(0, 1), (1, 2)]))
    assert g.vertices == (0, 2) and list(w.edge_paths.values()) == [(0, 1, 2)]
    c6 = Graph.from_edges([(i, (i + 1) % 6) for i in range(6)])
    g, w = suppress_degree2(c6)
    assert g.number_of_vertices() == 3 and g.number_of_edges() == 3
    assert verify_topo_witness(c6, g, w).ok
    star = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
    g, _ = suppress_degree2(star)
    assert g == star


def test_suppress_splits_at_color_change():
    g = Graph([0, 1, 2, 3], [(0, 0, 1, RED), (1, 1, 2, RED), (2, 2, 3, BLUE)])
    out, w = suppress_degree2(g)
    assert out.vertices == (0, 2, 3)
    assert verify_topo_witness(g, out, w).ok


@given(st.integers(0, 10_000))
def test_suppression_preserves_tau_and_witness(seed):
    g = random_connected(14, 0.12, seed)
    out, w = suppress_degree2(g)
    assert verify_topo_witness(g, out, w).ok
    cycles_hit_floor = any(len(c) <= 3 for c in out.components() if all(out.degree(v) == 2 for v in c))
    if not cycles_hit_floor:
        assert tau(out) == tau(g)


def test_topo_witness_checks():
    host = Graph.from_edges([(0, 1), (1, 2), (2, 3)])
    minor = Graph.from_edges([(0, 3)])
    assert verify_topo_witness(host, minor, TopoWitness({0: 0, 3: 3}, {0: (0, 1, 2, 3)})).ok
    star = Graph.from_edges([(0, 1), (1, 2), (1, 3)])
    minor = Graph.from_edges([(0, 2), (0, 3)])
    w = TopoWitness({0: 0, 2: 2, 3: 3}, {0: (0, 1, 2), 1: (0, 1, 3)})
    assert "internal-disjointness" in verify_topo_witness(star, minor, w).clauses()


def test_tau_examples():
    assert tau(Graph.from_edges([(0, 1), (1, 2), (2, 3)])) == 0
    assert tau(Graph.from_edges([(0, 1), (0, 2), (0, 3), (0, 4)])) == 1
    assert tau(grid(4, 4)) == 12


def _bruteforce_topo_minor(host, minor_nx):
    """Does ``minor_nx`` (subcubic) have a subdivision in ``host``?"""
    return any(True for _ in nx.algorithms.isomorphism.GraphMatcher(host, minor_nx).subgraph_monomorphisms_iter())


def test_subcubic_minor_iff_topological_minor():
    # subcubic minors: topological-minor witness exists iff a minor model exists
    k4 = nx.complete_graph(4)
    for seed in range(6):
        G = nx.gnp_random_graph(8, 0.5, seed=seed)
        has_minor = False
        for edges in _contractions(G, 4):
            if nx.is_isomorphic(edges, k4) or _contains(edges, k4):
                has_minor = True
                break
        has_topo = _has_subdivision(G, k4)
        assert has_minor == has_topo


def _contains(G, M):
    return any(True for _ in nx.algorithms.isomorphism.GraphMatcher(G, M).subgraph_monomorphisms_iter())


def _contractions(G, target):
    """All graphs obtainable by contractions down to ``target`` vertices (small G)."""
    seen = set()
    stack = [nx.Graph(G)]
    while stack:
        H = stack.pop()
        if H.number_of_nodes() <= target:
            yield H
            continue
        key = nx.weisfeiler_lehman_graph_hash(H)
        if key in seen:
            continue
        seen.add(key)
        yield H
        for u, v in list(H.edges):
            stack.append(nx.contracted_nodes(H, u, v, self_loops=False))


def _has_subdivision(G, M):
    """Exhaustive subdivision search by repeatedly suppressing degree-2 vertices of subgraphs."""
    import itertools

    for k in range(M.number_of_edges(), G.number_of_edges() + 1):
        for es in itertools.combinations(G.edges, k):
            H = nx.Graph(list(es))
            while True:
                d2 = [v for v in H if H.degree(v) == 2 and not H.has_edge(*list(H[v]))]
                if not d2:
                    break
                v = d2[0]
                a, b = list(H[v])
                H.remove_node(v)
                H.add_edge(a, b)
            H.remove_nodes_from([v for v in list(H) if H.degree(v) == 0])
            if nx.is_isomorphic(H, M):
                return True
    return False


def test_serialization_round_trip(tmp_path):
    g = Graph([0, 1, 2, 5], [(3, 0, 1, RED), (4, 1, 2, BLUE), (7, 1, 2, RED)])
    assert graph_from_dict(json.loads(json.dumps(graph_to_dict(g)))) == g
    p = tmp_path / "g.txt"
    p.write_text("# comment\n0 1 red\n1 2\n5\n")
    h = read_graph(p)
    assert h.vertices == (0, 1, 2, 5) and h.edge(0).color == RED
    with pytest.raises(FormatError, match="line 2"):
        parse_edge_list("0 1\n0 x\n")
