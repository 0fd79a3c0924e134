"""Node-disjoint routing and the connectivity oracles built on it.

Disjoint paths come from a unit vertex-capacity max-flow on the split graph
(every vertex ``v`` becomes ``v_in -> v_out``). Augmenting paths are found by
BFS over adjacency lists built in edge-id order, so the returned path system
only depends on the graph and the terminal sets.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .exceptions import InfeasibleError
from .graph import Graph, Verdict

DEFAULT_PAIR_BUDGET = 1 << 20
EXACT_CUT_THRESHOLD = 20


@dataclass(frozen=True)
class PathSet:
    """Vertex-disjoint paths, one per source, each ending in the sink set."""

    paths: tuple
    role: str = "red"
    sources: frozenset = frozenset()
    sinks: frozenset = frozenset()

    def __len__(self):
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def vertices(self) -> set:
        return {x for p in self.paths for x in p}

    def path_of(self) -> dict:
        """Map each vertex to ``(path index, position)``."""
        return {x: (i, j) for i, p in enumerate(self.paths) for j, x in enumerate(p)}

    def by_source(self) -> dict:
        return {p[0]: p for p in self.paths}

    def verify(self, g: Graph | None = None) -> Verdict:
        out = Verdict()
        seen = {}
        for i, p in enumerate(self.paths):
            if not p:
                out.fail("empty", f"path {i} is empty")
                continue
            if p[0] not in self.sources:
                out.fail("source", f"path {i} starts at {p[0]}, not a source")
            if p[-1] not in self.sinks:
                out.fail("sink", f"path {i} ends at {p[-1]}, not a sink")
            for x in p:
                if x in seen:
                    out.fail("disjointness", f"vertex {x} on paths {seen[x]} and {i}")
                seen[x] = i
            if g is not None:
                for a, b in zip(p, p[1:]):
                    if not g.edges_between(a, b):
                        out.fail("edge", f"path {i} uses non-edge ({a}, {b})")
        starts = [p[0] for p in self.paths if p]
        if sorted(starts) != sorted(self.sources):
            out.fail("bijection", "paths do not start at every source exactly once")
        return out

    def to_dict(self) -> dict:
        return {
            "role": self.role,
            "sources": sorted(self.sources),
            "sinks": sorted(self.sinks),
            "paths": [list(p) for p in self.paths],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PathSet":
        return cls(
            tuple(tuple(p) for p in d["paths"]),
            d.get("role", "red"),
            frozenset(d["sources"]),
            frozenset(d["sinks"]),
        )


@dataclass(frozen=True)
class CutReport:
    """A bipartition, its crossing-edge count, and how it was obtained."""

    side: frozenset
    crossing: int
    objective: float
    certificate: str = ""
    exact: bool = True

    def recount(self, g: Graph) -> int:
        return len(g.boundary(self.side))

    def to_dict(self) -> dict:
        return {
            "side": sorted(self.side),
            "crossing": self.crossing,
            "objective": self.objective,
            "certificate": self.certificate,
            "exact": self.exact,
        }


# ---------------------------------------------------------------------------
# unit-capacity vertex-disjoint flow


class _SplitFlow:
    """Residual network of the vertex-split graph.

    Node ``2*i`` is the in-copy and ``2*i+1`` the out-copy of the ``i``-th
    vertex in sorted order; the last two nodes are the super source and sink.
    Arcs are stored as parallel lists ``head``, ``cap`` with ``arc ^ 1`` as the
    reverse arc.
    """

    def __init__(self, g: Graph, sources, sinks, warm=()):
        self.verts = g.vertices
        self.index = {v: i for i, v in enumerate(self.verts)}
        n = len(self.verts)
        self.src, self.snk = 2 * n, 2 * n + 1
        self.adj = [[] for _ in range(2 * n + 2)]
        self.head, self.cap = [], []
        self.first_arc = {}
        big = len(sources) + 1
        for i in range(n):
            self._arc(2 * i, 2 * i + 1, 1)
        for e in g.edges:
            a, b = self.index[e.u], self.index[e.v]
            self._arc(2 * a + 1, 2 * b, big)
            self._arc(2 * b + 1, 2 * a, big)
        for s in sorted(sources):
            self._arc(self.src, 2 * self.index[s], big)
        for t in sorted(sinks):
            self._arc(2 * self.index[t] + 1, self.snk, big)
        self.value = 0
        for p in warm:
            self._push(p)

    def _push(self, path):
        ix = self.index
        nodes = [self.src]
        for x in path:
            nodes += [2 * ix[x], 2 * ix[x] + 1]
        nodes.append(self.snk)
        for a, b in zip(nodes, nodes[1:]):
            arc = self.first_arc[a, b]
            self.cap[arc] -= 1
            self.cap[arc ^ 1] += 1
        self.value += 1

    def _arc(self, a, b, c):
        self.first_arc.setdefault((a, b), len(self.head))
        self.adj[a].append(len(self.head))
        self.head.append(b)
        self.cap.append(c)
        self.adj[b].append(len(self.head))
        self.head.append(a)
        self.cap.append(0)

    def augment(self) -> bool:
        prev = {self.src: None}
        queue = deque([self.src])
        while queue:
            x = queue.popleft()
            for arc in self.adj[x]:
                y = self.head[arc]
                if self.cap[arc] > 0 and y not in prev:
                    prev[y] = arc
                    if y == self.snk:
                        while prev[y] is not None:
                            a = prev[y]
                            self.cap[a] -= 1
                            self.cap[a ^ 1] += 1
                            y = self.head[a ^ 1]
                        return True
                    queue.append(y)
        return False

    def reachable(self) -> set:
        seen = {self.src}
        queue = deque([self.src])
        while queue:
            x = queue.popleft()
            for arc in self.adj[x]:
                y = self.head[arc]
                if self.cap[arc] > 0 and y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def paths(self) -> list:
        out = []
        for arc in self.adj[self.src]:
            if arc & 1 or self.cap[arc ^ 1] == 0:
                continue
            node = self.head[arc]
            path = []
            while node != self.snk:
                if node % 2 == 0:
                    path.append(self.verts[node // 2])
                    node += 1
                    continue
                nxt = None
                for a in self.adj[node]:
                    if not a & 1 and self.cap[a ^ 1] > 0:
                        nxt = self.head[a]
                        break
                node = nxt
            out.append(tuple(path))
        return out


def max_disjoint_paths(
    g: Graph, sources: Iterable[int], sinks: Iterable[int], limit=None, warm=()
):
    """Maximum set of vertex-disjoint source-to-sink paths and a matching vertex cut.

    Returns ``(paths, cut)``; ``len(cut) == len(paths)`` by Menger's theorem.
    ``limit`` stops augmenting once that many paths are found (the cut is then
    not meaningful and is returned empty). ``warm`` is an optional family of
    disjoint source-to-sink paths of ``g`` used as the initial flow.
    """
    sources, sinks = set(sources), set(sinks)
    net = _SplitFlow(g, sources, sinks, warm)
    value = net.value
    while (limit is None or value < limit) and net.augment():
        value += 1
    paths = net.paths()
    if limit is not None and value >= limit:
        return paths, frozenset()
    reach = net.reachable()
    cut = frozenset(
        v for i, v in enumerate(net.verts) if 2 * i in reach and 2 * i + 1 not in reach
    )
    return paths, cut


def routable(g: Graph, sources: Iterable[int], sinks: Iterable[int]) -> bool:
    sources, sinks = set(sources), set(sinks)
    if len(sources) != len(sinks):
        return False
    if not sources <= set(g.vertices) or not sinks <= set(g.vertices):
        return False
    paths, _ = max_disjoint_paths(g, sources, sinks, limit=len(sources))
    return len(paths) == len(sources)


def reroute(g: Graph, sources, sinks, warm=()):
    """Complete a partial routing to a full one; ``None`` if impossible."""
    sources = set(sources)
    paths, _ = max_disjoint_paths(g, sources, sinks, limit=len(sources), warm=warm)
    if len(paths) < len(sources):
        return None
    paths.sort(key=lambda p: p[0])
    return paths


def route_node_disjoint(g: Graph, sources: Iterable[int], sinks: Iterable[int], role="red") -> PathSet:
    """Route ``sources`` to ``sinks`` by vertex-disjoint paths.

    Vertices in both sets are routed as single-vertex paths whenever the flow
    chooses to. Raises :class:`InfeasibleError` carrying a vertex cut of size
    less than ``len(sources)`` when no routing exists.
    """
    sources, sinks = frozenset(sources), frozenset(sinks)
    if len(sources) != len(sinks):
        raise ValueError(f"|S|={len(sources)} differs from |T|={len(sinks)}")
    bad = (sources | sinks) - set(g.vertices)
    if bad:
        raise ValueError(f"terminals {sorted(bad)[:5]} are not vertices of the graph")
    paths, cut = max_disjoint_paths(g, sources, sinks)
    if len(paths) < len(sources):
        raise InfeasibleError(
            f"only {len(paths)} of {len(sources)} disjoint paths exist", cut
        )
    paths.sort(key=lambda p: p[0])
    return PathSet(tuple(paths), role, sources, sinks)


# ---------------------------------------------------------------------------
# linkedness


@dataclass
class LinkVerdict(Verdict):
    checked: int = 0
    total: int = 0
    failing_pair: tuple | None = None


def _pair_count(a: int, b: int) -> int:
    return sum(math.comb(a, k) * math.comb(b, k) for k in range(1, min(a, b) + 1))


def _subset_pairs(A: list, B: list, rng, budget: int):
    total = _pair_count(len(A), len(B))
    if total <= budget:
        for k in range(1, min(len(A), len(B)) + 1):
            for a in itertools.combinations(A, k):
                for b in itertools.combinations(B, k):
                    yield a, b
        return
    for _ in range(budget):
        k = int(rng.integers(1, min(len(A), len(B)) + 1))
        a = tuple(sorted(rng.choice(A, size=k, replace=False).tolist()))
        b = tuple(sorted(rng.choice(B, size=k, replace=False).tolist()))
        yield a, b


def _check_pairs(g, A, B, budget, seed, overlap):
    A, B = sorted(A), sorted(B)
    total = _pair_count(len(A), len(B))
    out = LinkVerdict(exact=total <= budget, total=total)
    rng = np.random.default_rng(seed)
    for a, b in _subset_pairs(A, B, rng, budget):
        out.checked += 1
        if not routable(g, a, b):
            _, cut = max_disjoint_paths(g, a, b)
            out.failing_pair = (a, b)
            out.fail("routing", f"{list(a)} -> {list(b)} blocked by cut {sorted(cut)}")
            out.exact = True
            break
    out.details = {"checked": out.checked, "total": total}
    return out


def check_linked(g: Graph, A, B, budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0) -> LinkVerdict:
    """Every equal-sized ``A' ⊆ A``, ``B' ⊆ B`` routable; exhaustive within budget."""
    if set(A) & set(B):
        raise ValueError("A and B must be disjoint")
    return _check_pairs(g, A, B, budget, seed, overlap=False)


def check_node_well_linked(g: Graph, T, budget: int = DEFAULT_PAIR_BUDGET, seed: int = 0) -> LinkVerdict:
    """Every two equal-sized subsets of ``T`` routable (overlaps route as empty paths)."""
    return _check_pairs(g, T, T, budget, seed, overlap=True)


# ---------------------------------------------------------------------------
# edge well-linkedness


@dataclass
class WellLinkedReport:
    holds: bool
    worst_ratio: float
    worst_cut: CutReport | None
    exact: bool
    alpha: float
    family: list = field(default_factory=list)

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "worst_ratio": None if math.isinf(self.worst_ratio) else self.worst_ratio,
            "worst_cut": self.worst_cut.to_dict() if self.worst_cut else None,
            "exact": self.exact,
            "alpha": self.alpha,
            "family": self.family,
        }


def _cut_values(edges_uv: np.ndarray, masks: np.ndarray) -> np.ndarray:
    """Number of edges crossing each bipartition encoded as a bit mask."""
    vals = np.zeros(len(masks), dtype=np.int64)
    for u, v in edges_uv:
        vals += ((masks >> u) ^ (masks >> v)) & 1
    return vals


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    c = np.zeros_like(x)
    while np.any(x):
        c += x & 1
        x >>= 1
    return c


def _pairs_of(g: Graph):
    return [(e.u, e.v) for e in g.edges]


def worst_terminal_ratio_exact(g, T, pairs=None):
    """Exact min over bipartitions of ``|E(A,B)| / min(|A∩T|, |B∩T|)``.

    ``g`` is a :class:`Graph`, or a vertex list when ``pairs`` (an edge list
    with multiplicity) is given. Returns ``(ratio, side)``; ``ratio`` is
    ``inf`` when no bipartition splits T.
    """
    verts = tuple(sorted(g)) if pairs is not None else g.vertices
    pairs = _pairs_of(g) if pairs is None else pairs
    n = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    edges_uv = np.array([(idx[a], idx[b]) for a, b in pairs], dtype=np.int64).reshape(-1, 2)
    tmask = 0
    for t in T:
        tmask |= 1 << idx[t]
    best, best_mask = math.inf, None
    kt = len(set(T))
    chunk = 1 << 16
    # the last vertex is fixed on the complement side
    for start in range(0, 1 << (n - 1), chunk):
        masks = np.arange(start, min(start + chunk, 1 << (n - 1)), dtype=np.int64)
        ta = _popcount(masks & tmask)
        lo = np.minimum(ta, kt - ta)
        ok = lo > 0
        if not ok.any():
            continue
        vals = _cut_values(edges_uv, masks[ok])
        ratios = vals / lo[ok]
        j = int(np.argmin(ratios))
        if ratios[j] < best:
            best, best_mask = float(ratios[j]), int(masks[ok][j])
    side = None
    if best_mask is not None:
        side = frozenset(verts[i] for i in range(n) if best_mask >> i & 1)
    return best, side


def _min_cut_between(verts, pairs, X, Y):
    """Minimum edge cut separating vertex sets X and Y; returns the X side."""
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(verts)
    for a, b in pairs:
        if h.has_edge(a, b):
            h[a][b]["capacity"] += 1
        else:
            h.add_edge(a, b, capacity=1)
    s, t = ("src",), ("snk",)
    for x in X:
        h.add_edge(s, x, capacity=math.inf)
    for y in Y:
        h.add_edge(y, t, capacity=math.inf)
    _, (side, _) = nx.minimum_cut(h, s, t)
    return frozenset(v for v in side if v != s)


def _crossing(pairs, side) -> int:
    return sum((a in side) != (b in side) for a, b in pairs)


def terminal_ratio(verts, pairs, T, exact_threshold=EXACT_CUT_THRESHOLD, samples=200, seed=0):
    """Worst ``|E(A,B)| / min(|A∩T|, |B∩T|)`` on a multigraph given as an edge list.

    Returns ``(ratio, side, exact, family)``. Past ``exact_threshold``
    vertices the minimum is taken over single-vertex cuts, bipartitions of
    ``T`` lifted to minimum edge cuts, and random bipartitions, so the ratio
    is only an upper bound on the true minimum.
    """
    verts = sorted(verts)
    T = sorted(set(T))
    if len(verts) <= exact_threshold:
        ratio, side = worst_terminal_ratio_exact(verts, T, pairs)
        return ratio, side, True, ["all-bipartitions"]
    Tset = set(T)
    rng = np.random.default_rng(seed)
    candidates = [frozenset([v]) for v in verts]
    if len(T) <= 12:
        splits = [
            [T[i] for i in range(len(T)) if mask >> i & 1]
            for mask in range(1, 1 << (len(T) - 1))
        ]
    else:
        splits = []
        for _ in range(samples):
            k = int(rng.integers(1, len(T)))
            splits.append(sorted(rng.choice(T, size=k, replace=False).tolist()))
    for X in splits:
        Y = [t for t in T if t not in set(X)]
        candidates.append(_min_cut_between(verts, pairs, X, Y))
    for _ in range(samples):
        bits = rng.integers(0, 2, size=len(verts))
        candidates.append(frozenset(v for v, b in zip(verts, bits) if b))
    best, best_side = math.inf, None
    for side in candidates:
        a = len(side & Tset)
        lo = min(a, len(Tset) - a)
        if lo == 0:
            continue
        r = _crossing(pairs, side) / lo
        if r < best:
            best, best_side = r, side
    fam = ["single-vertex", "terminal-splits-lifted-by-min-cut", f"random-{samples}"]
    return best, best_side, False, fam


def check_alpha_well_linked(
    g: Graph,
    T,
    alpha: float,
    exact_threshold: int = EXACT_CUT_THRESHOLD,
    samples: int = 200,
    seed: int = 0,
) -> WellLinkedReport:
    """Is ``T`` alpha-well-linked (edge version) in ``g``?

    Exact enumeration of all bipartitions when ``|V| <= exact_threshold``.
    Otherwise the minimum ratio is taken over a heuristic family (see
    :func:`terminal_ratio`); the result is then an upper bound on the true
    minimum (``exact=False``), so a failing verdict is still conclusive.
    """
    if not 0 < alpha:
        raise ValueError("alpha must be positive")
    ratio, side, exact, fam = terminal_ratio(
        g.vertices, _pairs_of(g), T, exact_threshold, samples, seed
    )
    cut = None
    if side is not None:
        how = "enumeration" if exact else "heuristic-family"
        cut = CutReport(side, len(g.boundary(side)), ratio, how, exact)
    return WellLinkedReport(ratio >= alpha, ratio, cut, exact, alpha, fam)


# ---------------------------------------------------------------------------
# global minimum cut


def global_min_cut(g: Graph) -> CutReport:
    """Exact global minimum edge cut (parallel edges counted with multiplicity)."""
    import networkx as nx

    if g.number_of_vertices() < 2:
        raise ValueError("a cut needs at least two vertices")
    comps = g.components()
    if len(comps) > 1:
        side = frozenset(comps[0])
        return CutReport(side, 0, 0.0, "disconnected", True)
    value, (a, b) = nx.stoer_wagner(g.to_weighted_networkx())
    side = frozenset(a) if min(a) <= min(b) else frozenset(b)
    return CutReport(side, int(value), float(value), "stoer-wagner", True)


__all__ = [
    "CutReport",
    "LinkVerdict",
    "PathSet",
    "WellLinkedReport",
    "check_alpha_well_linked",
    "check_linked",
    "check_node_well_linked",
    "global_min_cut",
    "max_disjoint_paths",
    "reroute",
    "routable",
    "route_node_disjoint",
    "terminal_ratio",
    "worst_terminal_ratio_exact",
]
