"""Cut-matching game and expander embeddings.

The cut player follows the random-walk strategy: keep the product of the lazy
matching walks implicitly, push a random Gaussian vector through it, and cut
at the median of the resulting projection. The matching player is any
callable returning a perfect matching across the proposed bipartition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import FormatError, ProtocolError
from .graph import Graph, Verdict
from .routing import _cut_values, _popcount

EXPANSION_BUDGET = 1 << 21


def default_rounds(n: int) -> int:
    """``ceil(10 log2(n)^2)`` rounds, the desk-scale default."""
    if n < 2:
        return 0
    return math.ceil(10 * math.log2(n) ** 2)


@dataclass
class ExpanderState:
    """Vertices ``0..n-1`` and the union of the matchings played so far."""

    n: int
    edges: list = field(default_factory=list)
    rounds: int = 0
    max_rounds: int | None = None
    matchings: list = field(default_factory=list)
    pending: tuple | None = None

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"the game needs an even number of vertices, got {self.n}")

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def degrees(self) -> list:
        d = [0] * self.n
        for a, b in self.edges:
            d[a] += 1
            d[b] += 1
        return d

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def copy(self) -> "ExpanderState":
        return ExpanderState(
            self.n, list(self.edges), self.rounds, self.max_rounds,
            [list(m) for m in self.matchings], self.pending,
        )


def cut_player_partition(st: ExpanderState, rng: np.random.Generator):
    """Balanced bipartition ``(Y, Z)`` from the random-walk projection.

    Consumes exactly ``n`` standard normals from ``rng``.
    """
    n = st.n
    if n % 2:
        raise ValueError("odd number of vertices")
    r = rng.standard_normal(n)
    r -= r.mean()
    u = r
    for m in st.matchings:
        u = u.copy()
        for a, b in m:
            avg = (u[a] + u[b]) / 2
            u[a] = u[b] = avg
    order = np.argsort(u, kind="stable")
    Y = tuple(sorted(int(x) for x in order[: n // 2]))
    Z = tuple(sorted(int(x) for x in order[n // 2 :]))
    st.pending = (Y, Z)
    return Y, Z


def play_round(st: ExpanderState, matching) -> ExpanderState:
    """Add a perfect matching across the last proposed bipartition."""
    if st.pending is None:
        raise ProtocolError("no bipartition has been proposed")
    if st.max_rounds is not None and st.rounds >= st.max_rounds:
        raise ProtocolError(f"round cap {st.max_rounds} reached")
    Y, Z = st.pending
    pairs = []
    for a, b in matching:
        a, b = int(a), int(b)
        if a in Z and b in Y:
            a, b = b, a
        pairs.append((a, b))
    ys = sorted(a for a, _ in pairs)
    zs = sorted(b for _, b in pairs)
    if ys != list(Y) or zs != list(Z):
        raise ProtocolError("matching is not a perfect matching between Y and Z")
    pairs.sort()
    out = st.copy()
    out.edges.extend(pairs)
    out.matchings.append(pairs)
    out.rounds += 1
    out.pending = None
    d = out.degrees()
    if any(x != out.rounds for x in d):
        raise ProtocolError("matching left some vertex with the wrong degree")
    return out


@dataclass
class Transcript:
    n: int
    rounds: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rounds": [
                {"Y": list(Y), "Z": list(Z), "matching": [list(p) for p in M]}
                for Y, Z, M in self.rounds
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Transcript":
        try:
            rounds = [
                (tuple(r["Y"]), tuple(r["Z"]), [tuple(p) for p in r["matching"]])
                for r in d["rounds"]
            ]
            return cls(int(d["n"]), rounds)
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed transcript: {exc}") from exc


def replay(t: Transcript) -> ExpanderState:
    st = ExpanderState(t.n)
    for Y, Z, M in t.rounds:
        st.pending = (tuple(Y), tuple(Z))
        st = play_round(st, M)
    return st


def run_game(
    n: int,
    rounds: int,
    matching_oracle: Callable,
    rng: np.random.Generator,
):
    """Play ``rounds`` rounds; return the final state and the transcript.

    ``matching_oracle(Y, Z, j)`` must return a perfect matching between ``Y``
    and ``Z`` for round ``j`` (0-based).
    """
    st = ExpanderState(n, max_rounds=rounds)
    tr = Transcript(n)
    for j in range(rounds):
        Y, Z = cut_player_partition(st, rng)
        M = matching_oracle(Y, Z, j)
        st = play_round(st, M)
        tr.rounds.append((Y, Z, st.matchings[-1]))
    return st, tr


def random_matching_oracle(rng: np.random.Generator) -> Callable:
    def oracle(Y, Z, j):
        return list(zip(Y, rng.permutation(Z).tolist()))

    return oracle


def sorted_matching_oracle(Y, Z, j):
    """Pairs the i-th smallest of ``Y`` with the i-th smallest of ``Z``."""
    return list(zip(Y, Z))


@dataclass(frozen=True)
class ExpansionResult:
    value: float
    exact: bool
    side: frozenset | None = None

    def __float__(self):
        return self.value


def expansion(n: int, edges, budget: int = EXPANSION_BUDGET) -> ExpansionResult:
    """``min |E(S, V-S)| / |S|`` over nonempty ``S`` with ``|S| <= n/2``.

    Exact by enumeration when ``2**(n-1) <= budget``; otherwise ``lambda_2 / 2``
    of the Laplacian, which never exceeds the true value.
    """
    if n < 2:
        return ExpansionResult(0.0, True)
    uv = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
    if (1 << (n - 1)) <= budget:
        best, best_mask = math.inf, 0
        chunk = 1 << 16
        for start in range(1, 1 << (n - 1), chunk):
            masks = np.arange(start, min(start + chunk, 1 << (n - 1)), dtype=np.int64)
            size = _popcount(masks)
            small = np.minimum(size, n - size)
            vals = _cut_values(uv, masks) / small
            j = int(np.argmin(vals))
            if vals[j] < best:
                best, best_mask = float(vals[j]), int(masks[j])
        side = frozenset(i for i in range(n) if best_mask >> i & 1)
        if len(side) > n // 2:
            side = frozenset(range(n)) - side
        return ExpansionResult(best, True, side)
    L = np.zeros((n, n))
    for a, b in uv:
        L[a, a] += 1
        L[b, b] += 1
        L[a, b] -= 1
        L[b, a] -= 1
    lam = np.linalg.eigvalsh(L)
    return ExpansionResult(max(float(lam[1]) / 2, 0.0), False)


def state_expansion(st: ExpanderState, budget: int = EXPANSION_BUDGET) -> ExpansionResult:
    return expansion(st.n, st.edges, budget)


# ---------------------------------------------------------------------------
# embeddings


@dataclass(frozen=True)
class HostPath:
    vertices: tuple
    edges: tuple

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}

    @classmethod
    def from_dict(cls, d: dict) -> "HostPath":
        return cls(tuple(d["vertices"]), tuple(d["edges"]))


@dataclass
class ExpanderEmbedding:
    """Expander ``X`` mapped into a host graph.

    ``branches[v]`` is ``(vertex set, edge ids)`` of the connected subgraph
    for expander vertex ``v``; ``paths[i]`` is the host path for the ``i``-th
    expander edge ``x_edges[i]``.
    """

    n: int
    x_edges: list
    branches: dict
    paths: dict
    path_load: dict = field(default_factory=dict)
    branch_load: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.path_load and not self.branch_load:
            self.path_load, self.branch_load = self.recount()

    def recount(self):
        pl, bl = {}, {}
        for p in self.paths.values():
            for e in p.edges:
                pl[e] = pl.get(e, 0) + 1
        for _, es in self.branches.values():
            for e in es:
                bl[e] = bl.get(e, 0) + 1
        return pl, bl

    @property
    def eta(self) -> int:
        """Smallest ``c`` with every host edge on at most ``c-1`` paths and one branch."""
        worst = max(self.path_load.values(), default=0)
        return max(worst + 1, 1)

    @property
    def max_path_load(self) -> int:
        return max(self.path_load.values(), default=0)

    @property
    def max_branch_load(self) -> int:
        return max(self.branch_load.values(), default=0)

    def x_max_degree(self) -> int:
        d = [0] * self.n
        for a, b in self.x_edges:
            d[a] += 1
            d[b] += 1
        return max(d, default=0)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "x_edges": [list(e) for e in self.x_edges],
            "branches": {
                str(v): {"vertices": sorted(vs), "edges": sorted(es)}
                for v, (vs, es) in sorted(self.branches.items())
            },
            "paths": {str(i): p.to_dict() for i, p in sorted(self.paths.items())},
            "path_load": {str(e): c for e, c in sorted(self.path_load.items())},
            "branch_load": {str(e): c for e, c in sorted(self.branch_load.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExpanderEmbedding":
        return cls(
            int(d["n"]),
            [tuple(e) for e in d["x_edges"]],
            {
                int(v): (frozenset(b["vertices"]), frozenset(b["edges"]))
                for v, b in d["branches"].items()
            },
            {int(i): HostPath.from_dict(p) for i, p in d["paths"].items()},
            {int(e): c for e, c in d.get("path_load", {}).items()},
            {int(e): c for e, c in d.get("branch_load", {}).items()},
        )


def verify_embedding(host: Graph, emb: ExpanderEmbedding, max_eta: int | None = None) -> Verdict:
    """Check branch connectivity, path validity, endpoints and the load counters."""
    out = Verdict()
    for v in range(emb.n):
        if v not in emb.branches:
            out.fail("branch", f"expander vertex {v} has no branch subgraph")
            continue
        vs, es = emb.branches[v]
        if not vs:
            out.fail("branch", f"branch of {v} is empty")
            continue
        for e in es:
            if not host.has_edge(e) or host.edge(e).u not in vs or host.edge(e).v not in vs:
                out.fail("branch", f"branch of {v} lists edge {e} outside its vertices")
        sub = Graph(vs, (host.edge(e) for e in es if host.has_edge(e)))
        if not sub.is_connected():
            out.fail("branch", f"branch of {v} is not connected")
    for i, (a, b) in enumerate(emb.x_edges):
        p = emb.paths.get(i)
        if p is None:
            out.fail("path", f"expander edge {i} has no host path")
            continue
        if len(p.edges) != len(p.vertices) - 1 or len(set(p.vertices)) != len(p.vertices):
            out.fail("path", f"path of edge {i} is malformed")
            continue
        for x, y, e in zip(p.vertices, p.vertices[1:], p.edges):
            if not host.has_edge(e) or {host.edge(e).u, host.edge(e).v} != {x, y}:
                out.fail("path", f"path of edge {i} uses {e} between {x} and {y} wrongly")
        ends = {p.vertices[0], p.vertices[-1]}
        ba, bb = emb.branches.get(a, (frozenset(), ()))[0], emb.branches.get(b, (frozenset(), ()))[0]
        if not ((p.vertices[0] in ba and p.vertices[-1] in bb) or (p.vertices[0] in bb and p.vertices[-1] in ba)):
            out.fail("endpoints", f"path of edge {i} ends at {sorted(ends)}, not in branches {a}, {b}")
    pl, bl = emb.recount()
    if pl != emb.path_load or bl != emb.branch_load:
        out.fail("counters", "stored load counters differ from a recount")
    if emb.max_branch_load > 1:
        out.fail("congestion", "a host edge lies in two branch subgraphs")
    if max_eta is not None and emb.eta > max_eta:
        out.fail("congestion", f"congestion {emb.eta} exceeds {max_eta}")
    out.details = {"eta": emb.eta, "max_path_load": emb.max_path_load}
    return out


def treewidth_product(kappa, alpha, eta, delta, delta_prime) -> float:
    """Constant-free lower-bound expression ``kappa * alpha / (eta * delta * delta')``."""
    denom = eta * delta * delta_prime
    if denom <= 0:
        return 0.0
    return kappa * alpha / denom


def tw_certificate_from_embedding(
    emb: ExpanderEmbedding, alpha: float, host_max_degree: int
) -> dict:
    """Parameters of the embedding-based treewidth bound and the resulting products.

    ``product`` is ``kappa * alpha / (eta * Delta * Delta')`` and
    ``half_product`` is half of it. The unknown constant of the asymptotic
    bound is not applied; these numbers are only comparable across runs.
    """
    kappa = emb.n
    eta = emb.eta
    dp = emb.x_max_degree()
    prod = treewidth_product(kappa, alpha, eta, host_max_degree, dp)
    return {
        "kappa": kappa,
        "alpha": alpha,
        "eta": eta,
        "delta": host_max_degree,
        "delta_prime": dp,
        "product": prod,
        "half_product": prod / 2,
    }


__all__ = [
    "ExpanderEmbedding",
    "ExpanderState",
    "ExpansionResult",
    "HostPath",
    "Transcript",
    "cut_player_partition",
    "default_rounds",
    "expansion",
    "play_round",
    "random_matching_oracle",
    "replay",
    "run_game",
    "sorted_matching_oracle",
    "state_expansion",
    "treewidth_product",
    "tw_certificate_from_embedding",
    "verify_embedding",
]
