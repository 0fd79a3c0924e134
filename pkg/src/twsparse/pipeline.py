"""Degree-4 and degree-3 sparsifiers built on a path-of-sets system.

Each cluster is visited once. The cut player proposes a bipartition of the
expander vertices; the horizontal paths carry it to a split ``(A', A'')`` of
the cluster's ``A`` side, and a two-pair routing of ``(A, B)`` and
``(A', A'')`` inside the cluster yields the red continuation of every
horizontal path plus blue paths that realize the matching. The union of the
reduced cluster graphs and the connector edges is the degree-4 graph ``H``.
The degree-3 graph ``H*`` deletes, for every vertex with two blue edges, one
of them chosen uniformly at random.

RNG consumption order: all game rounds in cluster order (one Gaussian draw of
``h`` values per round), then one draw per sampling vertex in vertex-id order.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .cut_matching import (
    ExpanderEmbedding,
    ExpanderState,
    HostPath,
    Transcript,
    cut_player_partition,
    expansion,
    play_round,
    treewidth_product,
    verify_embedding,
)
from .exceptions import CertificateError, InfeasibleError, InvariantError
from .graph import (
    BLUE,
    RED,
    RED_BLUE,
    Edge,
    Graph,
    TopoWitness,
    Verdict,
    graph_from_dict,
    graph_to_dict,
    suppress_degree2,
    tau,
    verify_topo_witness,
)
from .path_of_sets import PathOfSetsSystem, PipelineConfig
from .routing import (
    PathSet,
    _cut_values,
    reroute,
    routable,
    terminal_ratio,
)
from .treewidth import exact_treewidth
from .two_pair import route_two_pairs

log = logging.getLogger(__name__)

SIZE_CONSTANT = 10
SAMPLING_FACTOR = 32
EXACT_TW_HOST_LIMIT = 25
CERT_VERSION = 1


def cluster_size_bound(h: int) -> int:
    return SIZE_CONSTANT * h**4


# ---------------------------------------------------------------------------
# one cluster


@dataclass
class ClusterRouting:
    """Routings of one cluster and its reduced graph ``H_i``.

    ``red``/``blue`` are paths of the host; ``red_h``/``blue_h`` are the same
    paths as ``(vertices, edge ids)`` of ``graph``.
    """

    index: int
    red: PathSet
    blue: PathSet
    graph: Graph
    witness: TopoWitness
    red_h: tuple
    blue_h: tuple
    split: tuple
    tau_union: int

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "red": self.red.to_dict(),
            "blue": self.blue.to_dict(),
            "graph": graph_to_dict(self.graph),
            "witness": self.witness.to_dict(),
            "split": [list(self.split[0]), list(self.split[1])],
            "tau_union": self.tau_union,
        }


def _path_edges(g: Graph, path) -> list:
    return [g.edges_between(a, b)[0] for a, b in zip(path, path[1:])]


def _uses(path, u, v) -> bool:
    return any({a, b} == {u, v} for a, b in zip(path, path[1:]))


def prune_to_minimal(J: Graph, pairs, families):
    """Delete edges of ``J`` while every pair stays routable.

    One pass in edge-id order suffices: an edge that could not be deleted
    earlier cannot be deleted from a smaller graph later. Returns the pruned
    graph (only vertices on the final paths) and the rerouted families.
    """
    families = [list(f) for f in families]
    for eid in [e.id for e in J.edges]:
        e = J.edge(eid)
        J2 = J.without_edges([eid])
        new = []
        for (S, T), paths in zip(pairs, families):
            keep = [p for p in paths if not _uses(p, e.u, e.v)]
            if len(keep) == len(paths):
                new.append(paths)
                continue
            r = reroute(J2, S, T, warm=keep)
            if r is None:
                break
            new.append(r)
        else:
            J, families = J2, new
    used = {x for fam in families for p in fam for x in p}
    eids = {i for fam in families for p in fam for i in _path_edges(J, p)}
    return J.edge_subgraph(eids, used), families


def _to_reduced(witness: TopoWitness, path) -> tuple:
    """Rewrite a path of the unsuppressed graph in terms of the reduced graph."""
    step = {}
    for eid, wp in witness.edge_paths.items():
        step[wp[0], wp[1]] = (eid, len(wp) - 1)
        step[wp[-1], wp[-2]] = (eid, len(wp) - 1)
    verts, eids, k = [path[0]], [], 0
    while k < len(path) - 1:
        eid, span = step[path[k], path[k + 1]]
        k += span
        verts.append(path[k])
        eids.append(eid)
    return tuple(verts), tuple(eids)


def cluster_iteration(g: Graph, pos: PathOfSetsSystem, i: int, partition, f: dict):
    """Route cluster ``i`` for one game round.

    ``partition`` is the cut player's ``(Y, Z)``; ``f`` maps each vertex of
    ``A_i`` to the expander vertex whose horizontal path currently ends
    there. Returns ``(ClusterRouting, matching)`` with the matching as
    ``(y, z)`` pairs of expander vertices.
    """
    Y, Z = set(partition[0]), set(partition[1])
    A, B = tuple(sorted(pos.A[i])), tuple(sorted(pos.B[i]))
    if sorted(f) != list(A):
        raise ValueError(f"f must be defined exactly on A_{i}")
    if len(Y) != len(Z) or Y & Z or set(f.values()) != Y | Z:
        raise ValueError("partition must split the expander vertices into equal halves")
    A1 = tuple(a for a in A if f[a] in Y)
    A2 = tuple(a for a in A if f[a] in Z)
    sub = g.induced_subgraph(pos.clusters[i])
    try:
        res = route_two_pairs(sub, A, B, A1, A2)
    except InfeasibleError as exc:
        raise InfeasibleError(f"cluster {i}: invalid path-of-sets system ({exc})", exc.cut) from exc
    pairs = [(A, B), (A1, A2)]
    J, (red, blue) = prune_to_minimal(res.union, pairs, [res.first.paths, res.second.paths])
    red_e = {e for p in red for e in _path_edges(J, p)}
    blue_e = {e for p in blue for e in _path_edges(J, p)}
    colors = {
        e: RED_BLUE if e in red_e and e in blue_e else RED if e in red_e else BLUE
        for e in red_e | blue_e
    }
    Hi, wit = suppress_degree2(J.recolored(colors), keep=set(A) | set(B))
    red_h = tuple(_to_reduced(wit, p) for p in red)
    blue_h = tuple(_to_reduced(wit, p) for p in blue)
    matching = [(f[p[0]], f[p[-1]]) for p in blue]
    cr = ClusterRouting(
        i,
        PathSet(tuple(red), RED, frozenset(A), frozenset(B)),
        PathSet(tuple(blue), BLUE, frozenset(A1), frozenset(A2)),
        Hi,
        wit,
        red_h,
        blue_h,
        (A1, A2),
        tau(J),
    )
    log.debug("cluster %d: |V(H_i)|=%d tau=%d", i, Hi.number_of_vertices(), cr.tau_union)
    return cr, matching


def verify_cluster_routing(cr: ClusterRouting, pos: PathOfSetsSystem) -> Verdict:
    """Size, degree and edge-minimality checks on a reduced cluster graph."""
    out = Verdict()
    H = cr.graph
    h = pos.h
    A, B = pos.A[cr.index], pos.B[cr.index]
    if H.number_of_vertices() > cluster_size_bound(h):
        out.fail("size", f"|V(H_{cr.index})|={H.number_of_vertices()} > {cluster_size_bound(h)}")
    if H.max_degree() > 4:
        out.fail("degree", f"H_{cr.index} has a vertex of degree {H.max_degree()}")
    for v in set(A) | set(B):
        if H.degree(v) > 3:
            out.fail("degree", f"interface vertex {v} has degree {H.degree(v)}")
    pairs = [(A, B), cr.split]
    for e in H.edges:
        H2 = H.without_edges([e.id])
        if all(routable(H2, S, T) for S, T in pairs):
            out.fail("minimality", f"edge {e.id} of H_{cr.index} can be deleted")
    for fam, (S, T) in zip((cr.red_h, cr.blue_h), pairs):
        ps = PathSet(tuple(v for v, _ in fam), RED, frozenset(S), frozenset(T))
        for c, m in ps.verify(H).violations:
            out.fail(f"paths/{c}", m)
    return out


# ---------------------------------------------------------------------------
# the horizontal family and the union graph


@dataclass
class SparsifierState:
    """Everything the constructions produce before sampling."""

    h: int
    r: int
    n_expanders: int
    rstar: int
    H: Graph
    witness: TopoWitness
    routings: list
    horizontal: tuple
    embeddings: list
    transcripts: list
    cluster_of: dict
    A: tuple

    def horizontal_vertices(self) -> list:
        return [p.vertices for p in self.horizontal]


def _run_games(g, pos, n_expanders, rng):
    h, r = pos.h, pos.r
    if h % 2:
        raise ValueError(f"h must be even, got {h}")
    if n_expanders < 1 or r % n_expanders:
        raise ValueError(f"r={r} is not a multiple of n_expanders={n_expanders}")
    rstar = r // n_expanders
    A1 = tuple(sorted(pos.A[0]))
    front = {a: v for v, a in enumerate(A1)}
    hv = {v: [a] for v, a in enumerate(A1)}
    he = {v: [] for v in range(h)}
    edges, paths = {}, {}
    routings, embeddings, transcripts = [], [], []
    for s in range(n_expanders):
        st = ExpanderState(h, max_rounds=rstar)
        tr = Transcript(h)
        start = {v: len(hv[v]) - 1 for v in range(h)}
        stop = {}
        blue_of = []
        for j in range(rstar):
            i = s * rstar + j
            Y, Z = cut_player_partition(st, rng)
            cr, M = cluster_iteration(g, pos, i, (Y, Z), dict(front))
            st = play_round(st, M)
            tr.rounds.append((Y, Z, st.matchings[-1]))
            routings.append(cr)
            for e in cr.graph.edges:
                edges[e.id] = e
            paths.update(cr.witness.edge_paths)
            blue_of.append({})
            for verts, eids in cr.blue_h:
                y, z = front[verts[0]], front[verts[-1]]
                blue_of[-1][min(y, z), max(y, z)] = HostPath(verts, eids)
            if j == rstar - 1:
                stop = {v: len(hv[v]) - 1 for v in range(h)}
            nxt = {}
            for verts, eids in cr.red_h:
                v = front[verts[0]]
                hv[v].extend(verts[1:])
                he[v].extend(eids)
                nxt[verts[-1]] = v
            front = nxt
            if i + 1 < r:
                front = {}
                for c in pos.connectors[i]:
                    v = nxt[c[0]]
                    cid = min(_path_edges(g, c))
                    edges[cid] = Edge(cid, c[0], c[-1], RED)
                    paths[cid] = tuple(c)
                    hv[v].append(c[-1])
                    he[v].append(cid)
                    front[c[-1]] = v
        x_edges, epaths = [], {}
        for j, M in enumerate(st.matchings):
            for a, b in M:
                epaths[len(x_edges)] = blue_of[j][min(a, b), max(a, b)]
                x_edges.append((a, b))
        branches = {
            v: (frozenset(hv[v][start[v] : stop[v] + 1]), frozenset(he[v][start[v] : stop[v]]))
            for v in range(h)
        }
        embeddings.append(ExpanderEmbedding(h, x_edges, branches, epaths))
        transcripts.append(tr)
    verts = {x for v in range(h) for x in hv[v]}
    for cr in routings:
        verts.update(cr.graph.vertices)
    H = Graph(verts, (edges[k] for k in sorted(edges)))
    witness = TopoWitness({v: v for v in H.vertices}, {k: paths[k] for k in sorted(edges)})
    horizontal = tuple(HostPath(tuple(hv[v]), tuple(he[v])) for v in range(h))
    cluster_of = {x: i for i, c in enumerate(pos.clusters) for x in c if x in verts}
    return SparsifierState(
        h, r, n_expanders, rstar, H, witness, routings, horizontal, embeddings,
        transcripts, cluster_of, A1,
    )


def check_degree_ledger(H: Graph) -> Verdict:
    """``deg <= 4`` everywhere and degree 4 only with exactly two blue edges."""
    out = Verdict()
    for v in H.vertices:
        d = H.degree(v)
        blues = sum(H.edge(e).color == BLUE for e in H.incident(v))
        if d > 4:
            out.fail("degree", f"vertex {v} has degree {d}")
        elif d == 4 and blues != 2:
            out.fail("blue-edges", f"degree-4 vertex {v} has {blues} blue edges")
        if blues > 2:
            out.fail("blue-edges", f"vertex {v} has {blues} blue edges")
    return out


def check_horizontal(state: SparsifierState) -> Verdict:
    """The horizontal paths are disjoint paths of ``H`` covering every vertex."""
    out = Verdict()
    H = state.H
    seen = {}
    for k, p in enumerate(state.horizontal):
        for x in p.vertices:
            if x in seen:
                out.fail("disjointness", f"vertex {x} on horizontal paths {seen[x]} and {k}")
            seen[x] = k
        for a, b, e in zip(p.vertices, p.vertices[1:], p.edges):
            if not H.has_edge(e) or {H.edge(e).u, H.edge(e).v} != {a, b}:
                out.fail("edges", f"horizontal path {k} uses {e} wrongly")
    missed = set(H.vertices) - set(seen)
    if missed:
        out.fail("coverage", f"vertices {sorted(missed)[:5]} lie on no horizontal path")
    return out


def embed_expander_degree4(g: Graph, pos: PathOfSetsSystem, config: PipelineConfig | None = None, rng=None):
    """Single expander over all clusters; returns ``(H, embedding, state)``."""
    if pos.h % 2:
        raise ValueError(f"h must be even, got {pos.h}")
    rng = np.random.default_rng(config.seed if config else 0) if rng is None else rng
    state = _run_games(g, pos, 1, rng)
    v = check_degree_ledger(state.H)
    if not v:
        raise InvariantError(f"degree ledger violated: {v.violations[:3]}")
    return state.H, state.embeddings[0], state


# ---------------------------------------------------------------------------
# sampling


@dataclass
class SamplingResult:
    graph: Graph
    deleted: dict
    choices: dict

    def to_dict(self) -> dict:
        return {
            "deleted": {str(e): list(c) for e, c in sorted(self.deleted.items())},
            "choices": {str(v): e for v, e in sorted(self.choices.items())},
        }


def sample_blue_edges(H: Graph, rng: np.random.Generator) -> SamplingResult:
    """Every vertex with two blue edges picks one; picked edges are deleted."""
    bad = check_degree_ledger(H)
    if not bad:
        raise InvariantError(f"sampling precondition fails: {bad.violations[0][1]}")
    choices = {}
    deleted = {}
    for v in H.vertices:
        blues = sorted(e for e in H.incident(v) if H.edge(e).color == BLUE)
        if len(blues) == 2:
            e = blues[int(rng.integers(2))]
            choices[v] = e
            deleted.setdefault(e, []).append(v)
    out = H.without_edges(deleted)
    if out.max_degree() > 3:
        raise InvariantError("sampled graph still has a vertex of degree 4")
    return SamplingResult(out, {e: tuple(c) for e, c in deleted.items()}, choices)


# ---------------------------------------------------------------------------
# segments and contraction


def _heavy(seq, cluster_of, theta) -> bool:
    if not seq:
        return False
    return max(Counter(cluster_of[x] for x in seq).values()) >= theta


def segment_path(vertices, cluster_of: dict, theta: int) -> list:
    """Greedy split of one path into heavy segments (or the path itself)."""
    if theta < 1:
        raise ValueError("theta must be at least 1")
    rest = list(vertices)
    if not _heavy(rest, cluster_of, theta):
        return [tuple(rest)]
    out = []
    while True:
        counts = Counter()
        cut = len(rest)
        for k, x in enumerate(rest):
            counts[cluster_of[x]] += 1
            if counts[cluster_of[x]] >= theta:
                cut = k + 1
                break
        if _heavy(rest[cut:], cluster_of, theta):
            out.append(tuple(rest[:cut]))
            rest = rest[cut:]
        else:
            out.append(tuple(rest))
            return out


def segment_red_paths(state, theta: int) -> list:
    """Segments of every horizontal path, in path order."""
    out = []
    for p in state.horizontal:
        out.extend(segment_path(p.vertices, state.cluster_of, theta))
    return out


@dataclass
class ContractedGraph:
    """``F`` and ``F*`` as edge maps keyed by the originating ``H`` edge id."""

    segments: tuple
    supernode: dict
    F_edges: dict
    Fstar_edges: dict
    g: dict

    @property
    def vertices(self) -> list:
        return list(range(len(self.segments)))

    @property
    def U(self) -> list:
        return sorted(self.g.values())

    def pairs(self, star: bool = False) -> list:
        src = self.Fstar_edges if star else self.F_edges
        return [src[k] for k in sorted(src)]

    def lift(self, side) -> set:
        return {x for s in side for x in self.segments[s]}


def contract_segments(H: Graph, Hstar: Graph, segments, A) -> ContractedGraph:
    supernode = {}
    for k, seg in enumerate(segments):
        for x in seg:
            if x in supernode:
                raise InvariantError(f"vertex {x} lies in two segments")
            supernode[x] = k
    missing = set(H.vertices) - set(supernode)
    if missing:
        raise InvariantError(f"vertices {sorted(missing)[:5]} lie in no segment")
    F = {}
    for e in H.edges:
        a, b = supernode[e.u], supernode[e.v]
        if a != b:
            F[e.id] = (min(a, b), max(a, b))
    Fs = {k: p for k, p in F.items() if Hstar.has_edge(k)}
    gmap = {u: supernode[u] for u in A}
    if len(set(gmap.values())) != len(gmap):
        raise InvariantError("two vertices of A share a supernode")
    return ContractedGraph(tuple(tuple(s) for s in segments), supernode, F, Fs, gmap)


def _min_cut_pairs(verts, pairs):
    import networkx as nx

    if len(verts) < 2:
        return None, None
    G = nx.Graph()
    G.add_nodes_from(verts)
    for a, b in pairs:
        if G.has_edge(a, b):
            G[a][b]["weight"] += 1
        else:
            G.add_edge(a, b, weight=1)
    comps = sorted((sorted(c) for c in nx.connected_components(G)), key=lambda c: c[0])
    if len(comps) > 1:
        return 0, frozenset(comps[0])
    value, (a, b) = nx.stoer_wagner(G)
    side = a if min(a) <= min(b) else b
    return int(value), frozenset(side)


def verify_min_cut_F(F, n_required: int) -> Verdict:
    """Exact global minimum cut of ``F`` against the configured ``N``.

    ``F`` is a :class:`ContractedGraph` or ``(vertices, pairs)``.
    """
    verts, pairs = (F.vertices, F.pairs()) if isinstance(F, ContractedGraph) else F
    value, side = _min_cut_pairs(list(verts), list(pairs))
    out = Verdict(details={"min_cut": value, "N": n_required, "side": sorted(side) if side else None})
    if value is not None and value < n_required:
        how = "F is disconnected" if value == 0 else f"min cut {value} < N={n_required}"
        out.fail("min-cut", how)
    return out


def verify_sampling_preservation(
    F, factor: float = SAMPLING_FACTOR, exact_threshold: int = 20, samples: int = 500, seed: int = 0
) -> dict:
    """Worst ``|out_F*(S)| / |out_F(S)|`` over a cut family.

    All cuts when ``|V(F)| <= exact_threshold``; otherwise every singleton
    plus ``samples`` random sides. Cuts with ``out_F(S) = 0`` are skipped.
    """
    verts = F.vertices
    n = len(verts)
    full = np.array(F.pairs(), dtype=np.int64).reshape(-1, 2)
    star = np.array(F.pairs(star=True), dtype=np.int64).reshape(-1, 2)
    if n < 2:
        return {"worst_ratio": 1.0, "holds": True, "cuts": 0, "violations": 0, "exact": True, "factor": factor}
    if n <= exact_threshold:
        masks = np.arange(1, 1 << (n - 1), dtype=np.int64)
        exact = True
    else:
        rng = np.random.default_rng(seed)
        single = [1 << i for i in range(min(n, 62))]
        rand = rng.integers(1, 1 << min(n - 1, 62), size=samples, dtype=np.int64).tolist()
        masks = np.array(sorted(set(single + rand)), dtype=np.int64)
        exact = n <= 63
    cf = _cut_values(full, masks)
    cs = _cut_values(star, masks)
    ok = cf > 0
    if not ok.any():
        return {"worst_ratio": 1.0, "holds": True, "cuts": 0, "violations": 0, "exact": exact, "factor": factor}
    ratios = cs[ok] / cf[ok]
    j = int(np.argmin(ratios))
    worst = float(ratios[j])
    side = [verts[i] for i in range(n) if int(masks[ok][j]) >> i & 1]
    return {
        "worst_ratio": worst,
        "worst_side": side,
        "holds": worst >= 1 / factor,
        "cuts": int(ok.sum()),
        "violations": int((ratios < 1 / factor).sum()),
        "exact": exact,
        "factor": factor,
    }


def check_cut_lift(H: Graph, F: ContractedGraph, trials: int = 100, seed: int = 0) -> Verdict:
    """``|out_F(S)|`` equals ``|out_H|`` of the uncontracted lift of ``S``."""
    out = Verdict()
    rng = np.random.default_rng(seed)
    pairs = F.pairs()
    for t in range(trials):
        bits = rng.integers(0, 2, size=len(F.vertices))
        side = {v for v, b in zip(F.vertices, bits) if b}
        cf = sum((a in side) != (b in side) for a, b in pairs)
        ch = len(H.boundary(F.lift(side)))
        if cf != ch:
            out.fail("cut-lift", f"trial {t}: out_F={cf}, out_H={ch}")
    return out


# ---------------------------------------------------------------------------
# degree-3 driver


@dataclass
class Degree3Result:
    state: SparsifierState
    sampling: SamplingResult
    segments: list
    contracted: ContractedGraph
    theta: int

    @property
    def Hstar(self) -> Graph:
        return self.sampling.graph

    @property
    def witness(self) -> TopoWitness:
        w = self.state.witness
        keep = {e.id for e in self.Hstar.edges}
        return TopoWitness(dict(w.vertex_map), {k: p for k, p in w.edge_paths.items() if k in keep})


def build_degree3(g: Graph, pos: PathOfSetsSystem, config: PipelineConfig, rng=None) -> Degree3Result:
    """N expanders over consecutive subsystems, then blue-edge sampling."""
    if config.r != pos.r or config.h != pos.h:
        raise ValueError("configuration does not match the path-of-sets system")
    rng = np.random.default_rng(config.seed) if rng is None else rng
    state = _run_games(g, pos, config.n_expanders, rng)
    ledger = check_degree_ledger(state.H)
    if not ledger:
        raise InvariantError(f"degree ledger violated: {ledger.violations[:3]}")
    cov = check_horizontal(state)
    if not cov:
        raise InvariantError(f"horizontal family broken: {cov.violations[:3]}")
    sampling = sample_blue_edges(state.H, rng)
    segments = segment_red_paths(state, config.theta)
    cg = contract_segments(state.H, sampling.graph, segments, state.A)
    return Degree3Result(state, sampling, segments, cg, config.theta)


# ---------------------------------------------------------------------------
# certificates


def witness_bundle(result, pos: PathOfSetsSystem, config: PipelineConfig, degree: int) -> dict:
    """Everything needed to recompute a certificate, as plain JSON data."""
    state = result.state if degree == 3 else result
    d = {
        "version": CERT_VERSION,
        "degree": degree,
        "config": config.to_dict(),
        "A": list(state.A),
        "clusters": [sorted(c) for c in pos.clusters],
        "H": graph_to_dict(state.H),
        "H_witness": state.witness.to_dict(),
        "horizontal": [p.to_dict() for p in state.horizontal],
        "embeddings": [e.to_dict() for e in state.embeddings],
        "transcripts": [t.to_dict() for t in state.transcripts],
        "cluster_sizes": [cr.graph.number_of_vertices() for cr in state.routings],
    }
    if degree == 3:
        d["witness"] = result.witness.to_dict()
        d["sampling"] = result.sampling.to_dict()
        d["segments"] = [list(s) for s in result.segments]
    else:
        d["witness"] = state.witness.to_dict()
    return d


def _wl(verts, pairs, T, seed):
    ratio, _, exact, fam = terminal_ratio(verts, pairs, T, seed=seed)
    return {"ratio": None if math.isinf(ratio) else ratio, "exact": exact, "family": fam}


def certify(g: Graph, out: Graph, bundle: dict, exact_tw_limit: int = EXACT_TW_HOST_LIMIT) -> dict:
    """Recompute every certificate field from the host, the output and the witnesses.

    Raises :class:`CertificateError` when the topological witness does not map
    the output into the host or the output disagrees with the stored data.
    """
    from .cut_matching import Transcript, replay

    degree = bundle["degree"]
    cfg = bundle["config"]
    h, r, n_exp, theta, seed = cfg["h"], cfg["r"], cfg["n_expanders"], cfg["theta"], cfg["seed"]
    A = list(bundle["A"])
    H = graph_from_dict(bundle["H"])
    witness = TopoWitness.from_dict(bundle["witness"])
    wv = verify_topo_witness(g, out, witness)
    if not wv:
        raise CertificateError(f"topological witness rejected: {wv.violations[0]}")
    hw = verify_topo_witness(g, H, TopoWitness.from_dict(bundle["H_witness"]))
    if not hw:
        raise CertificateError(f"witness of H rejected: {hw.violations[0]}")
    checks = {}
    out_edges = {e.id: e for e in out.edges}
    sub_ok = all(H.has_edge(k) and H.edge(k) == e for k, e in out_edges.items())
    sub_ok = sub_ok and set(out.vertices) <= set(H.vertices)
    if degree == 4:
        sub_ok = sub_ok and out == H
    if not sub_ok:
        raise CertificateError("output graph is not the stored union graph (or a subgraph of it)")
    checks["witness"] = True
    checks["A_subset"] = set(A) <= set(out.vertices)
    max_deg = out.max_degree()
    checks["max_degree"] = max_deg <= degree
    bound = SIZE_CONSTANT * h**4 * r
    sizes = {
        "vertices": out.number_of_vertices(),
        "edges": out.number_of_edges(),
        "bound": bound,
        "constant": SIZE_CONSTANT,
        "per_cluster": list(bundle["cluster_sizes"]),
        "per_cluster_bound": cluster_size_bound(h),
        "sum_clusters": sum(bundle["cluster_sizes"]),
    }
    checks["size"] = sizes["vertices"] <= bound and sizes["vertices"] <= sizes["sum_clusters"]
    checks["cluster_size"] = all(s <= cluster_size_bound(h) for s in sizes["per_cluster"])
    ledger = check_degree_ledger(H)
    checks["degree_ledger"] = ledger.ok

    # horizontal paths must cover H
    hor = [HostPath.from_dict(p) for p in bundle["horizontal"]]
    seen = [x for p in hor for x in p.vertices]
    checks["horizontal"] = len(seen) == len(set(seen)) and set(seen) == set(H.vertices) and all(
        H.has_edge(e) and {H.edge(e).u, H.edge(e).v} == {a, b}
        for p in hor
        for a, b, e in zip(p.vertices, p.vertices[1:], p.edges)
    )

    expanders = []
    for k, ed in enumerate(bundle["embeddings"]):
        emb = ExpanderEmbedding.from_dict(ed)
        ev = verify_embedding(H, emb, max_eta=2)
        tr = Transcript.from_dict(bundle["transcripts"][k])
        replayed = sorted(map(tuple, replay(tr).edges)) == sorted(map(tuple, emb.x_edges))
        ex = expansion(emb.n, emb.x_edges)
        dp = emb.x_max_degree()
        expanders.append({
            "n": emb.n,
            "rounds": len(tr.rounds),
            "eta": emb.eta,
            "max_path_load": emb.max_path_load,
            "max_branch_load": emb.max_branch_load,
            "delta_prime": dp,
            "expansion": ex.value,
            "expansion_exact": ex.exact,
            "product": treewidth_product(emb.n, ex.value, emb.eta, H.max_degree(), dp),
            "valid": ev.ok and replayed,
        })
    checks["embeddings"] = all(e["valid"] for e in expanders)

    wl = {
        "A_in_H": _wl(H.vertices, [(e.u, e.v) for e in H.edges], A, seed),
        "A_in_output": _wl(out.vertices, [(e.u, e.v) for e in out.edges], A, seed),
    }
    cert = {
        "version": CERT_VERSION,
        "degree": degree,
        "config": cfg,
        "sizes": sizes,
        "max_degree": max_deg,
        "tau": tau(out),
        "A_size": len(A),
        "expanders": expanders,
        "well_linked": wl,
    }
    if degree == 3:
        Hstar_expected = H.without_edges(int(e) for e in bundle["sampling"]["deleted"])
        checks["sampling_replay"] = Hstar_expected == out
        segments = [tuple(s) for s in bundle["segments"]]
        cluster_of = {x: i for i, c in enumerate(bundle["clusters"]) for x in c}
        expected = []
        for p in hor:
            expected.extend(segment_path(p.vertices, cluster_of, theta))
        checks["segments"] = expected == segments
        cg = contract_segments(H, out, segments, A)
        mc = verify_min_cut_F(cg, n_exp)
        cert["min_cut_F"] = {"value": mc.details["min_cut"], "N": n_exp, "holds": mc.ok}
        sp = verify_sampling_preservation(cg, seed=seed)
        cert["sampling_preservation"] = {k: v for k, v in sp.items() if k != "worst_side"}
        cert["F_size"] = {"vertices": len(cg.vertices), "edges": len(cg.F_edges), "edges_star": len(cg.Fstar_edges)}
        checks["cut_lift"] = check_cut_lift(H, cg, seed=seed).ok
        wl["U_in_Fstar"] = _wl(cg.vertices, cg.pairs(star=True), cg.U, seed)
    alpha = wl["A_in_output"]["ratio"]
    alpha = 0.0 if alpha is None else alpha
    product = min(alpha, 1.0) * len(A) / max(max_deg, 1)
    tw = {"lower_product": product}
    if g.number_of_vertices() <= exact_tw_limit:
        two = exact_treewidth(out)
        twg = exact_treewidth(g)
        tw.update({"exact_output": two, "exact_host": twg, "ordering_holds": product <= two <= twg})
        checks["treewidth_ordering"] = tw["ordering_holds"]
    cert["treewidth"] = tw
    cert["checks"] = checks
    cert["ok"] = all(checks.values())
    return _jsonable(cert)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


def compare_certificates(stored: dict, recomputed: dict, path: str = "") -> list:
    """Paths at which two certificates differ (floats compared to 1e-9)."""
    diffs = []
    if isinstance(stored, dict) and isinstance(recomputed, dict):
        for k in sorted(set(stored) | set(recomputed)):
            if k not in stored or k not in recomputed:
                diffs.append(f"{path}/{k}")
            else:
                diffs.extend(compare_certificates(stored[k], recomputed[k], f"{path}/{k}"))
    elif isinstance(stored, list) and isinstance(recomputed, list):
        if len(stored) != len(recomputed):
            diffs.append(path)
        else:
            for i, (a, b) in enumerate(zip(stored, recomputed)):
                diffs.extend(compare_certificates(a, b, f"{path}/{i}"))
    elif isinstance(stored, float) or isinstance(recomputed, float):
        if not isinstance(stored, (int, float)) or not isinstance(recomputed, (int, float)):
            diffs.append(path)
        elif abs(stored - recomputed) > 1e-9:
            diffs.append(path)
    elif stored != recomputed:
        diffs.append(path)
    return diffs


@dataclass
class SparsifierRun:
    """Output graph, witness bundle and certificate of one construction."""

    degree: int
    graph: Graph
    bundle: dict
    certificate: dict
    state: SparsifierState = field(repr=False, default=None)
    result: Degree3Result | None = field(repr=False, default=None)


def sparsify(g: Graph, pos: PathOfSetsSystem, config: PipelineConfig, degree: int = 3) -> SparsifierRun:
    """Run the degree-3 or degree-4 construction and certify it."""
    if degree not in (3, 4):
        raise ValueError(f"degree must be 3 or 4, got {degree}")
    rng = np.random.default_rng(config.seed)
    if degree == 4:
        H, _, state = embed_expander_degree4(g, pos, config, rng)
        bundle = witness_bundle(state, pos, config, 4)
        cert = certify(g, H, bundle)
        return SparsifierRun(4, H, bundle, cert, state, None)
    res = build_degree3(g, pos, config, rng)
    bundle = witness_bundle(res, pos, config, 3)
    cert = certify(g, res.Hstar, bundle)
    return SparsifierRun(3, res.Hstar, bundle, cert, res.state, res)


__all__ = [
    "CERT_VERSION",
    "ClusterRouting",
    "ContractedGraph",
    "Degree3Result",
    "SamplingResult",
    "SparsifierRun",
    "SparsifierState",
    "build_degree3",
    "certify",
    "check_cut_lift",
    "check_degree_ledger",
    "check_horizontal",
    "cluster_iteration",
    "cluster_size_bound",
    "compare_certificates",
    "contract_segments",
    "embed_expander_degree4",
    "prune_to_minimal",
    "sample_blue_edges",
    "segment_path",
    "segment_red_paths",
    "sparsify",
    "verify_cluster_routing",
    "verify_min_cut_F",
    "verify_sampling_preservation",
    "witness_bundle",
]
