"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import itertools
import json
import math
import random
import subprocess
import sys
import time

import networkx as nx
import numpy as np
import pytest

from conftest import random_connected, random_two_pair_instance
from oracles import adjacency, disjoint_paths_exist, routable_nx
from twsparse.cut_matching import default_rounds, expansion, random_matching_oracle, run_game
from twsparse.exceptions import InfeasibleError
from twsparse.graph import BLUE, verify_topo_witness
from twsparse.path_of_sets import PipelineConfig, generate_from_grid
from twsparse.pipeline import build_degree3, sample_blue_edges, sparsify
from twsparse.routing import route_node_disjoint
from twsparse.treewidth import exact_treewidth
from twsparse.two_pair import (
    build_chains,
    route_two_pairs,
    size_bound,
    tau_bound,
    verify_chain_properties,
)


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\nacceptance {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def two_pair_runs():
    start = time.perf_counter()
    runs = []
    for seed in range(200):
        g, S1, T1, S2, T2 = random_two_pair_instance(seed)
        runs.append(((g, S1, T1, S2, T2), route_two_pairs(g, S1, T1, S2, T2)))
    return runs, time.perf_counter() - start


def test_1_two_pair_size_bound(two_pair_runs, capsys):
    runs, elapsed = two_pair_runs
    bad = []
    for (g, S1, T1, S2, T2), res in runs:
        m = res.minor
        k1 = max(len(set(S1)), len(set(S2)))
        if m.H.number_of_vertices() > size_bound(m.k) or res.tau > tau_bound(k1):
            bad.append((g.number_of_vertices(), m.H.number_of_vertices(), res.tau))
        if not (res.first.verify(g).ok and res.second.verify(g).ok):
            bad.append("lifted paths invalid")
    ks = {(len(set(i[1])), len(set(i[3]))) for i, _ in runs}
    ok = not bad and len(runs) >= 200 and elapsed < 300
    report(capsys, 1, ok, f"{len(runs)} instances, k pairs {sorted(ks)}, {len(bad)} violations, {elapsed:.1f}s")
    assert ok, bad[:5]


def _nx_graph(vertices, edges):
    G = nx.Graph()
    G.add_nodes_from(vertices)
    G.add_edges_from((e.u, e.v) for e in edges)
    return G


def _both_route(G, inst):
    return routable_nx(G, *inst.red_pair()) and routable_nx(G, *inst.blue_pair())


def test_2_minimality_definitional(two_pair_runs, capsys):
    runs, _ = two_pair_runs
    bad = 0
    edges_checked = 0
    for _, res in runs:
        m = res.minor
        H, inst = m.H, m.instance
        terms = inst.terminals
        if not _both_route(_nx_graph(H.vertices, H.edges), inst):
            bad += 1
        for e in H.edges:
            edges_checked += 1
            rest = [f for f in H.edges if f.id != e.id]
            if _both_route(_nx_graph(H.vertices, rest), inst):
                bad += 1
            if e.u in terms or e.v in terms:
                continue
            C = nx.contracted_nodes(_nx_graph(H.vertices, H.edges), e.u, e.v, self_loops=False)
            if _both_route(nx.Graph(C), inst):
                bad += 1
    report(capsys, 2, bad == 0, f"{edges_checked} edges re-tested by networkx connectivity, {bad} violations")
    assert bad == 0


def test_3_chain_suite(two_pair_runs, capsys):
    runs, _ = two_pair_runs
    bad, inexact = [], 0
    for _, res in runs:
        m = res.minor
        cs = build_chains(m)
        v = verify_chain_properties(m, cs)
        inexact += not v.exact
        if not v.ok:
            bad.append(v.clauses())
        if max(len(set(cs.labels.values())), len(set(cs.rlabels.values()))) > 2 * m.k:
            bad.append("labels")
    ok = not bad and inexact == 0
    report(capsys, 3, ok, f"{len(runs)} minors, {len(bad)} violations, {inexact} cycle searches cut short")
    assert ok, bad[:5]


def test_4_routing_oracle_equivalence(capsys):
    start = time.perf_counter()
    rng = random.Random(4)
    bad = 0
    for _ in range(500):
        n = rng.randint(2, 8)
        G = nx.gnp_random_graph(n, rng.uniform(0.15, 0.6), seed=rng.randrange(1 << 30))
        from twsparse.graph import Graph

        g = Graph.from_edges(sorted(G.edges()), range(n))
        k = rng.randint(1, n // 2)
        picked = rng.sample(range(n), 2 * k)
        S, T = picked[:k], picked[k:]
        expect = disjoint_paths_exist(adjacency(range(n), G.edges()), S, T)
        try:
            ps = route_node_disjoint(g, S, T)
            got = ps.verify(g).ok and len(ps) == k
        except InfeasibleError as exc:
            got = False
            if len(exc.cut) >= k:
                bad += 1
        bad += got != expect
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 120
    report(capsys, 4, ok, f"500 instances, {bad} disagreements, {elapsed:.1f}s")
    assert ok


CONFIGS = [
    (h, r, n)
    for h in (2, 4)
    for r in (2, 4, 6)
    for n in (1, 2, 3)
    if r % n == 0
]


def test_5_degree3_structure(capsys):
    start = time.perf_counter()
    bad = []
    for h, r, n in CONFIGS:
        g, pos = generate_from_grid(h, r, check=False)
        cfg = PipelineConfig.for_system(pos, n, seed=h * 100 + r * 10 + n)
        res = build_degree3(g, pos, cfg)
        Hs = res.Hstar
        checks = {
            "degree": Hs.max_degree() <= 3,
            "A": set(res.state.A) <= set(Hs.vertices),
            "size": Hs.number_of_vertices() <= 10 * h**4 * r,
            "witness": verify_topo_witness(g, Hs, res.witness).ok,
            "eta": all(e.eta <= 2 for e in res.state.embeddings),
        }
        if not all(checks.values()):
            bad.append(((h, r, n), [k for k, v in checks.items() if not v]))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    report(capsys, 5, ok, f"{len(CONFIGS)} configurations, {len(bad)} violations, {elapsed:.1f}s")
    assert ok, bad


def test_6_sampling_survival(capsys):
    # h=6 gives vertices with two blue edges, so sampling actually deletes
    g, pos = generate_from_grid(6, 2, check=False)
    cfg = PipelineConfig.for_system(pos, 1, seed=1)
    H = build_degree3(g, pos, cfg).state.H
    blue = [e.id for e in H.edges if e.color == BLUE]
    choosers = [v for v in H.vertices if sum(H.edge(e).color == BLUE for e in H.incident(v)) == 2]
    trials = 10_000
    survived = dict.fromkeys(blue, 0)
    for seed in range(trials):
        s = sample_blue_edges(H, np.random.default_rng(seed))
        for e in blue:
            survived[e] += e not in s.deleted
    sigma = math.sqrt(0.25 * 0.75 / trials)
    floor = 0.25 - 3 * sigma
    worst = min(c / trials for c in survived.values())
    ok = bool(choosers) and worst >= floor
    report(capsys, 6, ok, f"{len(blue)} blue edges, {len(choosers)} choosing vertices, "
           f"lowest survival {worst:.4f} vs floor {floor:.4f}")
    assert ok


def test_7_cut_matching_expansion(capsys):
    lines = []
    ok = True
    for n in (8, 16):
        good = 0
        for seed in range(10):
            rng = np.random.default_rng(seed)
            st, _ = run_game(n, default_rounds(n), random_matching_oracle(rng), rng)
            ex = expansion(n, st.edges)
            assert ex.exact
            good += ex.value >= 0.3
        lines.append(f"N={n}: {good}/10")
        ok = ok and good >= 9
    report(capsys, 7, ok, ", ".join(lines))
    assert ok


def test_8_certificate_consistency(capsys):
    hosts = [(2, 1), (2, 2), (2, 3), (2, 4), (4, 1)]
    bad, runs = [], 0
    for h, r in hosts:
        g, pos = generate_from_grid(h, r, check=False)
        assert g.number_of_vertices() <= 25
        tw_host = exact_treewidth(g)
        for n in [d for d in range(1, r + 1) if r % d == 0]:
            for seed in range(5):
                run = sparsify(g, pos, PipelineConfig.for_system(pos, n, seed=seed), 3)
                runs += 1
                tw_out = exact_treewidth(run.graph)
                prod = run.certificate["treewidth"]["lower_product"]
                if not (prod <= tw_out <= tw_host) or not run.certificate["ok"]:
                    bad.append(((h, r, n, seed), prod, tw_out, tw_host))
    report(capsys, 8, not bad, f"{runs} runs on hosts of at most 25 vertices, {len(bad)} violations")
    assert not bad, bad[:5]


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "twsparse", *map(str, argv)], capture_output=True)


def test_9_determinism(tmp_path, capsys):
    star = tmp_path / "star.txt"
    star.write_text("0 1\n0 2\n0 3\n0 4\n")
    commands = [
        ("generate", "grid-pos", "--h", "2", "--r", "4"),
        ("generate", "random-graph", "--n", "20", "--seed", "3"),
        ("route2", star, "1", "2", "3", "4"),
        ("sparsify", "--h", "2", "--r", "4", "--n-expanders", "2", "--seed", "11"),
        ("sparsify", "--h", "2", "--r", "2", "--degree", "4", "--seed", "11"),
    ]
    differ = []
    for cmd in commands:
        a, b = _cli(*cmd), _cli(*cmd)
        if a.returncode != 0 or a.stdout != b.stdout or a.returncode != b.returncode:
            differ.append(cmd[:2])
    outs = []
    for k in range(2):
        d = tmp_path / f"o{k}"
        _cli("sparsify", "--h", "4", "--r", "2", "--seed", "2", "--out", d)
        outs.append([(d / f).read_bytes() for f in ("sparsifier.json", "witness.json", "certificate.json")])
    if outs[0] != outs[1]:
        differ.append("sparsify --out")
    ok = not differ
    report(capsys, 9, ok, f"{len(commands) + 1} commands rerun, {len(differ)} differing")
    assert ok, differ
