"""Path-of-sets systems: representation, validation, grid generator, splitting, JSON I/O."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .exceptions import FormatError, VersionError
from .graph import Graph, Verdict, graph_from_dict, graph_to_dict
from .routing import DEFAULT_PAIR_BUDGET, check_linked, check_node_well_linked

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PathOfSetsSystem:
    """Clusters ``S_i`` with interfaces ``A_i``, ``B_i`` and connector paths.

    ``connectors[i]`` holds the ``h`` paths from ``B_i`` to ``A_{i+1}``.
    ``cross_links`` is only set on subsystems: the connector bundle leaving
    the subsystem's last cluster towards the next subsystem.
    """

    host: Graph
    clusters: tuple
    A: tuple
    B: tuple
    connectors: tuple
    strong: bool = True
    cross_links: tuple = ()

    @property
    def r(self) -> int:
        return len(self.clusters)

    @property
    def h(self) -> int:
        return len(self.A[0]) if self.A else 0

    def cluster_graph(self, i: int) -> Graph:
        return self.host.induced_subgraph(self.clusters[i])

    def to_dict(self) -> dict:
        return {
            "version": SCHEMA_VERSION,
            "host": graph_to_dict(self.host),
            "clusters": [sorted(c) for c in self.clusters],
            "interfaces": [{"A": list(a), "B": list(b)} for a, b in zip(self.A, self.B)],
            "connectors": [[list(p) for p in bundle] for bundle in self.connectors],
            "cross_links": [list(p) for p in self.cross_links],
            "strong": self.strong,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PathOfSetsSystem":
        if not isinstance(d, dict):
            raise FormatError("path-of-sets document must be a JSON object")
        version = d.get("version")
        if version != SCHEMA_VERSION:
            raise VersionError(f"unsupported path-of-sets schema version {version!r}")
        try:
            return cls(
                graph_from_dict(d["host"]),
                tuple(frozenset(c) for c in d["clusters"]),
                tuple(tuple(x["A"]) for x in d["interfaces"]),
                tuple(tuple(x["B"]) for x in d["interfaces"]),
                tuple(tuple(tuple(p) for p in bundle) for bundle in d["connectors"]),
                bool(d.get("strong", False)),
                tuple(tuple(p) for p in d.get("cross_links", [])),
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed path-of-sets document: missing or bad {exc}") from exc


def save(pos: PathOfSetsSystem, path) -> None:
    with open(path, "w") as fh:
        json.dump(pos.to_dict(), fh, sort_keys=True, indent=1)
        fh.write("\n")


def loads(text: str) -> PathOfSetsSystem:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(d, dict) and "pos" in d and "version" not in d:
        d = d["pos"]
    return PathOfSetsSystem.from_dict(d)


def load(path) -> PathOfSetsSystem:
    with open(path) as fh:
        text = fh.read()
    try:
        return loads(text)
    except FormatError as exc:
        raise type(exc)(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# validation


def validate(pos: PathOfSetsSystem, budget: int = DEFAULT_PAIR_BUDGET) -> Verdict:
    """Check every structural requirement; ``details`` records exactness per clause."""
    out = Verdict()
    g = pos.host
    V = set(g.vertices)
    exact = {}
    seen = {}
    for i, c in enumerate(pos.clusters):
        if not c <= V:
            out.fail("membership", f"cluster {i} has vertices outside the host")
        for v in c:
            if v in seen:
                out.fail("disjointness", f"vertex {v} in clusters {seen[v]} and {i}")
            seen[v] = i
    if len(pos.A) != pos.r or len(pos.B) != pos.r:
        out.fail("interfaces", "one (A, B) interface pair per cluster is required")
        return out
    h = pos.h
    union = set(seen)
    for i, c in enumerate(pos.clusters):
        a, b = pos.A[i], pos.B[i]
        if not c or not pos.host.is_connected(c):
            out.fail("connectivity", f"cluster {i} does not induce a connected graph")
        if len(set(a)) != h or len(set(b)) != h:
            out.fail("interfaces", f"cluster {i} interfaces must have {h} distinct vertices")
        if not set(a) <= c or not set(b) <= c:
            out.fail("interfaces", f"cluster {i} interfaces leave the cluster")
            continue
        if set(a) & set(b):
            out.fail("interfaces", f"A and B of cluster {i} intersect")
            continue
        sub = pos.cluster_graph(i)
        lv = check_linked(sub, a, b, budget)
        exact[f"linked/{i}"] = lv.exact
        if not lv:
            out.fail("linked", f"cluster {i}: {lv.violations[0][1]}")
        if pos.strong:
            for name, t in (("A", a), ("B", b)):
                wv = check_node_well_linked(sub, t, budget)
                exact[f"well-linked/{name}{i}"] = wv.exact
                if not wv:
                    out.fail("node-well-linked", f"cluster {i} {name}: {wv.violations[0][1]}")
    bundles = list(pos.connectors)
    if len(bundles) != max(pos.r - 1, 0):
        out.fail("connectors", f"expected {pos.r - 1} connector bundles, got {len(bundles)}")
    used = {}
    for i, bundle in enumerate(bundles[: pos.r - 1]):
        starts = sorted(p[0] for p in bundle if p)
        ends = sorted(p[-1] for p in bundle if p)
        if len(bundle) != h or starts != sorted(pos.B[i]) or ends != sorted(pos.A[i + 1]):
            out.fail("connectors", f"bundle {i} does not route B_{i} to A_{i + 1}")
        for p in bundle:
            for x, y in zip(p, p[1:]):
                if not g.edges_between(x, y):
                    out.fail("connectors", f"bundle {i} uses non-edge ({x}, {y})")
            for x in p[1:-1]:
                if x in union:
                    out.fail("inner-vertex", f"bundle {i} passes through cluster vertex {x}")
            for x in p:
                if x in used:
                    out.fail("connector-disjointness", f"vertex {x} on two connector paths")
                used[x] = i
    out.exact = all(exact.values())
    out.details = {"exact": exact}
    return out


# ---------------------------------------------------------------------------
# generation and splitting


def grid_dimensions(h: int, r: int) -> tuple:
    return h, r * h + r - 1


def generate_from_grid(h: int, r: int, check: bool = True) -> tuple:
    """Grid host of ``h`` rows and ``r*h + r - 1`` columns with ``r`` square blocks.

    Vertex ``(row, col)`` has id ``row * width + col``. Block ``i`` (0-based)
    spans columns ``i*(h+1) .. i*(h+1)+h-1``; the single column after it is a
    gap, so each connector is the 2-edge row segment ``B_i -> gap -> A_{i+1}``.
    """
    if h < 2 or r < 1:
        raise ValueError("need h >= 2 and r >= 1")
    rows, width = grid_dimensions(h, r)

    def vid(row, col):
        return row * width + col

    pairs = []
    for row in range(rows):
        for col in range(width):
            if col + 1 < width:
                pairs.append((vid(row, col), vid(row, col + 1)))
            if row + 1 < rows:
                pairs.append((vid(row, col), vid(row + 1, col)))
    host = Graph.from_edges(pairs, range(rows * width))
    clusters, A, B, connectors = [], [], [], []
    for i in range(r):
        c0 = i * (h + 1)
        clusters.append(frozenset(vid(row, c0 + col) for row in range(h) for col in range(h)))
        A.append(tuple(vid(row, c0) for row in range(h)))
        B.append(tuple(vid(row, c0 + h - 1) for row in range(h)))
        if i + 1 < r:
            gap = c0 + h
            connectors.append(
                tuple((vid(row, gap - 1), vid(row, gap), vid(row, gap + 1)) for row in range(h))
            )
    pos = PathOfSetsSystem(host, tuple(clusters), tuple(A), tuple(B), tuple(connectors), True)
    if check and h <= 4:
        v = validate(pos)
        if not v:
            raise AssertionError(f"grid generator produced an invalid system: {v.violations}")
    return host, pos


def split_into_subsystems(pos: PathOfSetsSystem, n: int, rstar: int) -> list:
    """Cut the system into ``n`` consecutive subsystems of width ``rstar``."""
    if n < 1 or rstar < 1 or pos.r != n * rstar:
        raise ValueError(f"r={pos.r} is not {n} * {rstar}")
    out = []
    for i in range(n):
        lo, hi = i * rstar, (i + 1) * rstar
        cross = pos.connectors[hi - 1] if i + 1 < n else ()
        out.append(
            PathOfSetsSystem(
                pos.host,
                pos.clusters[lo:hi],
                pos.A[lo:hi],
                pos.B[lo:hi],
                pos.connectors[lo : hi - 1],
                pos.strong,
                tuple(cross),
            )
        )
    return out


# ---------------------------------------------------------------------------
# configuration


def _log2(x: float) -> float:
    return math.log2(max(x, 2))


@dataclass(frozen=True)
class PipelineConfig:
    """Desk-scale parameters plus the values the asymptotic formulas would give.

    Logarithms in the formulas are base 2.
    """

    h: int
    r: int
    rstar: int
    n_expanders: int
    theta: int
    seed: int = 0
    budget: int = DEFAULT_PAIR_BUDGET
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.h < 2 or self.h % 2:
            raise ValueError(f"h must be an even integer >= 2, got {self.h}")
        if self.r != self.n_expanders * self.rstar:
            raise ValueError(f"r={self.r} must equal n_expanders*rstar={self.n_expanders * self.rstar}")
        if self.theta < 1:
            raise ValueError("theta must be at least 1")

    @classmethod
    def for_system(cls, pos: PathOfSetsSystem, n_expanders: int, theta: int | None = None, seed: int = 0, **kw):
        if pos.r % n_expanders:
            raise ValueError(f"r={pos.r} is not divisible by {n_expanders}")
        rstar = pos.r // n_expanders
        if theta is None:
            theta = max(1, 2 * pos.h)
        return cls(pos.h, pos.r, rstar, n_expanders, theta, seed, **kw)

    def asymptotic_values(self, k: int | None = None) -> dict:
        """Parameter values from the asymptotic analysis, for comparison only."""
        k = k if k is not None else self.h
        gamma = math.ceil(10 * _log2(k) ** 2)
        n_formula = math.ceil(3072 * _log2(10 * self.h**4 * self.rstar))
        return {
            "r": 2**15 * _log2(k) * gamma,
            "n_expanders": n_formula,
            "theta": 200 * n_formula**4,
            "theta_for_configured_n": 200 * self.n_expanders**4,
            "gamma_cmg": gamma,
        }

    def to_dict(self) -> dict:
        return {
            "h": self.h,
            "r": self.r,
            "rstar": self.rstar,
            "n_expanders": self.n_expanders,
            "theta": self.theta,
            "seed": self.seed,
            "budget": self.budget,
            "asymptotic": self.asymptotic_values(),
        }


__all__ = [
    "PathOfSetsSystem",
    "PipelineConfig",
    "SCHEMA_VERSION",
    "generate_from_grid",
    "grid_dimensions",
    "load",
    "loads",
    "save",
    "split_into_subsystems",
    "validate",
]
