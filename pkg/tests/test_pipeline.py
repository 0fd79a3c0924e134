import copy
import hashlib
import json

import numpy as np
import pytest

from twsparse.cut_matching import verify_embedding
from twsparse.exceptions import CertificateError, InvariantError
from twsparse.graph import BLUE, RED, Graph, graph_to_dict, verify_topo_witness
from twsparse.path_of_sets import PipelineConfig, generate_from_grid
from twsparse.pipeline import (
    ContractedGraph,
    build_degree3,
    certify,
    check_cut_lift,
    check_degree_ledger,
    check_horizontal,
    cluster_iteration,
    cluster_size_bound,
    compare_certificates,
    contract_segments,
    embed_expander_degree4,
    sample_blue_edges,
    segment_path,
    sparsify,
    verify_cluster_routing,
    verify_min_cut_F,
    verify_sampling_preservation,
)


@pytest.fixture(scope="module")
def grid_2_4():
    g, pos = generate_from_grid(2, 4)
    cfg = PipelineConfig.for_system(pos, 2, seed=3)
    return g, pos, cfg


def test_cluster_iteration_single_matching_edge():
    g, pos = generate_from_grid(2, 2)
    A = sorted(pos.A[0])
    cr, matching = cluster_iteration(g, pos, 0, ((0,), (1,)), {A[0]: 0, A[1]: 1})
    assert sorted(tuple(sorted(m)) for m in matching) == [(0, 1)]
    assert cr.graph.number_of_vertices() <= cluster_size_bound(2)
    assert verify_cluster_routing(cr, pos).ok


def test_cluster_iteration_rejects_bad_partition():
    g, pos = generate_from_grid(2, 2)
    A = sorted(pos.A[0])
    with pytest.raises(ValueError):
        cluster_iteration(g, pos, 0, ((0, 1), ()), {A[0]: 0, A[1]: 1})


def test_degree4_embedding_small_grid():
    g, pos = generate_from_grid(2, 2)
    H, emb, state = embed_expander_degree4(g, pos)
    assert H.max_degree() <= 4
    assert check_degree_ledger(H).ok and check_horizontal(state).ok
    assert verify_embedding(H, emb, max_eta=2).ok


def test_h4_cluster_routings_are_minimal():
    g, pos = generate_from_grid(4, 1)
    _, _, state = embed_expander_degree4(g, pos)
    assert state.routings
    for cr in state.routings:
        assert verify_cluster_routing(cr, pos).ok


def test_odd_h_rejected():
    g, pos = generate_from_grid(3, 2)
    with pytest.raises(ValueError):
        embed_expander_degree4(g, pos)


def test_degree3_structure(grid_2_4):
    g, pos, cfg = grid_2_4
    res = build_degree3(g, pos, cfg)
    Hs = res.Hstar
    assert Hs.max_degree() <= 3
    assert set(pos.A[0]) <= set(Hs.vertices)
    assert Hs.number_of_vertices() <= 10 * 2**4 * 4
    assert verify_topo_witness(g, Hs, res.witness).ok
    assert all(e.eta <= 2 for e in res.state.embeddings)
    assert check_cut_lift(res.state.H, res.contracted).ok


def test_sampling_forced_choice():
    H = Graph(range(5), [(0, 0, 1, RED), (1, 0, 2, RED), (2, 0, 3, BLUE), (3, 0, 4, BLUE)])
    for seed in range(5):
        s = sample_blue_edges(H, np.random.default_rng(seed))
        assert s.graph.degree(0) == 3
        assert len(s.deleted) == 1 and list(s.deleted.values()) == [(0,)]


def test_sampling_without_two_blue_vertices_is_identity():
    H = Graph(range(4), [(0, 0, 1, RED), (1, 1, 2, BLUE), (2, 2, 3, RED)])
    assert sample_blue_edges(H, np.random.default_rng(0)).graph == H


def test_sampling_precondition():
    H = Graph(range(5), [(0, 0, 1, RED), (1, 0, 2, RED), (2, 0, 3, RED), (3, 0, 4, BLUE)])
    with pytest.raises(InvariantError):
        sample_blue_edges(H, np.random.default_rng(0))


def test_segmentation():
    cluster_of = {v: 0 for v in range(10)}
    assert segment_path(range(8), cluster_of, 4) == [(0, 1, 2, 3), (4, 5, 6, 7)]
    assert segment_path(range(3), cluster_of, 4) == [(0, 1, 2)]
    # the heavy remainder rule keeps a short tail attached to the last segment
    assert segment_path(range(10), cluster_of, 4) == [(0, 1, 2, 3), (4, 5, 6, 7, 8, 9)]


def test_contraction_examples():
    H = Graph(range(4), [(0, 0, 1, RED), (1, 2, 3, RED), (2, 0, 2, BLUE), (3, 1, 3, BLUE)])
    trivial = contract_segments(H, H, [(v,) for v in range(4)], [0, 2])
    assert len(trivial.F_edges) == 4
    per_path = contract_segments(H, H.without_edges([3]), [(0, 1), (2, 3)], [0, 2])
    assert per_path.vertices == [0, 1]
    assert per_path.pairs() == [(0, 1), (0, 1)] and per_path.pairs(star=True) == [(0, 1)]
    with pytest.raises(InvariantError):
        contract_segments(H, H, [(0, 1), (2, 3)], [0, 1])


def test_min_cut_of_F():
    cycle = (list(range(5)), [(i, (i + 1) % 5) for i in range(5)])
    v = verify_min_cut_F(cycle, 2)
    assert v.ok and v.details["min_cut"] == 2
    assert not verify_min_cut_F(cycle, 3).ok
    split = ([0, 1, 2, 3], [(0, 1), (2, 3)])
    v = verify_min_cut_F(split, 1)
    assert not v.ok and v.details["min_cut"] == 0


def _contracted(full, star):
    n = 1 + max(max(p) for p in full)
    return ContractedGraph(tuple((v,) for v in range(n)), {v: v for v in range(n)},
                           dict(enumerate(full)), star, {})


def test_sampling_preservation():
    full = [(0, 1), (1, 2), (2, 3), (3, 0)]
    same = verify_sampling_preservation(_contracted(full, dict(enumerate(full))))
    assert same["worst_ratio"] == 1.0 and same["holds"] and same["violations"] == 0
    gone = verify_sampling_preservation(_contracted(full, {0: (0, 1), 2: (2, 3)}))
    assert not gone["holds"] and gone["violations"] > 0 and gone["worst_ratio"] == 0.0


def test_certificate_round_trip_and_tampering(grid_2_4):
    g, pos, cfg = grid_2_4
    run = sparsify(g, pos, cfg, 3)
    assert run.certificate["ok"], run.certificate["checks"]
    again = certify(g, run.graph, json.loads(json.dumps(run.bundle)))
    assert compare_certificates(run.certificate, again) == []
    bad = copy.deepcopy(run.bundle)
    key = next(iter(bad["witness"]["edge_paths"]))
    bad["witness"]["edge_paths"][key] = bad["witness"]["edge_paths"][key][:1]
    with pytest.raises(CertificateError):
        certify(g, run.graph, bad)
    extra = Graph(run.graph.vertices, list(run.graph.edges) + [(10**6, *run.graph.vertices[:2], "none")])
    with pytest.raises(CertificateError):
        certify(g, extra, run.bundle)


def test_degree4_certificate():
    g, pos = generate_from_grid(2, 2)
    cfg = PipelineConfig.for_system(pos, 1, seed=0)
    run = sparsify(g, pos, cfg, 4)
    assert run.certificate["ok"] and run.graph.max_degree() <= 4


def test_determinism(grid_2_4):
    g, pos, cfg = grid_2_4

    def digest():
        run = sparsify(g, pos, cfg, 3)
        return hashlib.sha256(json.dumps(graph_to_dict(run.graph), sort_keys=True).encode()).hexdigest()

    assert digest() == digest()


def test_edge_chosen_from_both_ends_survives_a_quarter():
    # blue path 0-1-2-3 inside red spokes: edge (1, 2) is exposed to two choosers
    H = Graph(
        range(6),
        [(0, 0, 1, BLUE), (1, 1, 2, BLUE), (2, 2, 3, BLUE), (3, 1, 4, RED), (4, 2, 5, RED)],
    )
    trials = 4000
    kept = sum(1 not in sample_blue_edges(H, np.random.default_rng(s)).deleted for s in range(trials))
    assert abs(kept / trials - 0.25) < 4 * (0.1875 / trials) ** 0.5
