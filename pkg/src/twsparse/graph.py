"""Colored multigraphs, minor edits, and minor / topological-minor evidence.

Graphs are immutable values. Every edit returns a new :class:`Graph`; vertex
and edge ids are stable integers so that evidence objects (minor models,
subdivision witnesses) can refer back to the graph they were built from.

Parallel edges are allowed only when their color tags differ. Contraction and
suppression drop would-be loops and merge same-colored parallels, keeping the
lowest edge id.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .exceptions import FormatError, InvariantError, NotFoundError

RED = "red"
BLUE = "blue"
RED_BLUE = "red-blue"
NONE = "none"
COLORS = (RED, BLUE, RED_BLUE, NONE)


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    color: str = NONE

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"vertex {x} is not an endpoint of edge {self.id}")

    @property
    def key(self) -> tuple[int, int, str]:
        a, b = (self.u, self.v) if self.u <= self.v else (self.v, self.u)
        return a, b, self.color


@dataclass
class Verdict:
    """Outcome of a verification routine.

    ``violations`` lists ``(clause, detail)`` pairs; the verdict holds iff it
    is empty. ``exact`` is False when the check ran in a sampled or heuristic
    regime and a positive answer is therefore not a proof.
    """

    violations: list = field(default_factory=list)
    exact: bool = True
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, clause: str, detail: str = "") -> None:
        self.violations.append((clause, detail))

    def clauses(self) -> set:
        return {c for c, _ in self.violations}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "exact": self.exact,
            "violations": [list(v) for v in self.violations],
            "details": self.details,
        }


class Graph:
    """Undirected multigraph with color-tagged edges and stable ids."""

    __slots__ = ("_edges", "_inc", "_keys", "_cache")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable = ()):
        self._edges: dict[int, Edge] = {}
        self._inc: dict[int, set] = {int(v): set() for v in vertices}
        self._keys: dict[tuple, int] = {}
        self._cache: dict = {}
        for item in edges:
            e = item if isinstance(item, Edge) else Edge(*item)
            e = Edge(int(e.id), int(e.u), int(e.v), e.color)
            self._insert(e)

    def _insert(self, e: Edge) -> None:
        if e.color not in COLORS:
            raise ValueError(f"unknown color tag {e.color!r}")
        if e.u == e.v:
            raise InvariantError(f"edge {e.id} is a self-loop at {e.u}")
        if e.id in self._edges:
            raise InvariantError(f"duplicate edge id {e.id}")
        if e.key in self._keys:
            raise InvariantError(
                f"edge {e.id} duplicates edge {self._keys[e.key]} "
                f"({e.u}, {e.v}, {e.color})"
            )
        self._edges[e.id] = e
        self._keys[e.key] = e.id
        self._inc.setdefault(e.u, set()).add(e.id)
        self._inc.setdefault(e.v, set()).add(e.id)

    @classmethod
    def from_edges(cls, pairs: Iterable, vertices: Iterable[int] = ()) -> "Graph":
        """Build a graph from ``(u, v)`` or ``(u, v, color)`` tuples, ids 0, 1, ..."""
        edges = []
        for i, p in enumerate(pairs):
            color = p[2] if len(p) > 2 else NONE
            edges.append(Edge(i, p[0], p[1], color))
        return cls(vertices, edges)

    @classmethod
    def _raw(cls, edges: dict, inc: dict, keys: dict) -> "Graph":
        g = cls.__new__(cls)
        g._edges, g._inc, g._keys, g._cache = edges, inc, keys, {}
        return g

    # ------------------------------------------------------------------ queries
    @property
    def vertices(self) -> tuple:
        if "V" not in self._cache:
            self._cache["V"] = tuple(sorted(self._inc))
        return self._cache["V"]

    @property
    def edges(self) -> tuple:
        if "E" not in self._cache:
            self._cache["E"] = tuple(self._edges[i] for i in sorted(self._edges))
        return self._cache["E"]

    def number_of_vertices(self) -> int:
        return len(self._inc)

    def number_of_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._inc

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def edge(self, eid: int) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise NotFoundError(f"edge {eid} not in graph") from None

    def incident(self, v: int) -> tuple:
        try:
            return tuple(sorted(self._inc[v]))
        except KeyError:
            raise NotFoundError(f"vertex {v} not in graph") from None

    def degree(self, v: int) -> int:
        try:
            return len(self._inc[v])
        except KeyError:
            raise NotFoundError(f"vertex {v} not in graph") from None

    def neighbors(self, v: int) -> tuple:
        return tuple(sorted({self._edges[e].other(v) for e in self.incident(v)}))

    def edges_between(self, u: int, v: int) -> tuple:
        if u not in self._inc or v not in self._inc:
            return ()
        return tuple(sorted(e for e in self._inc[u] if self._edges[e].other(u) == v))

    def find_edge(self, u: int, v: int, color: str = NONE):
        a, b = (u, v) if u <= v else (v, u)
        return self._keys.get((a, b, color))

    def max_degree(self) -> int:
        return max((len(s) for s in self._inc.values()), default=0)

    def max_vertex_id(self) -> int:
        return max(self._inc, default=-1)

    def max_edge_id(self) -> int:
        return max(self._edges, default=-1)

    def boundary(self, side: Iterable[int]) -> tuple:
        """Ids of edges with exactly one endpoint in ``side``."""
        side = set(side)
        out = set()
        for v in side:
            for e in self._inc.get(v, ()):
                if self._edges[e].other(v) not in side:
                    out.add(e)
        return tuple(sorted(out))

    def edges_across(self, a: Iterable[int], b: Iterable[int]) -> tuple:
        a, b = set(a), set(b)
        return tuple(
            e.id for e in self.edges if (e.u in a and e.v in b) or (e.u in b and e.v in a)
        )

    def components(self, within: Iterable[int] | None = None) -> list:
        """Connected components (as sorted tuples) of the graph induced on ``within``."""
        allowed = set(self._inc) if within is None else set(within) & set(self._inc)
        seen, comps = set(), []
        for s in sorted(allowed):
            if s in seen:
                continue
            comp, queue = [], deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for e in self._inc[x]:
                    y = self._edges[e].other(x)
                    if y in allowed and y not in seen:
                        seen.add(y)
                        queue.append(y)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self, within: Iterable[int] | None = None) -> bool:
        return len(self.components(within)) <= 1

    def shortest_path(self, source: int, target: int, within: Iterable[int] | None = None):
        """BFS path from ``source`` to ``target`` inside ``within``; ties broken by edge id."""
        allowed = None if within is None else set(within)
        prev = {source: None}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            if x == target:
                break
            for e in self.incident(x):
                y = self._edges[e].other(x)
                if y in prev or (allowed is not None and y not in allowed):
                    continue
                prev[y] = x
                queue.append(y)
        if target not in prev:
            return None
        path = [target]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return tuple(reversed(path))

    # ------------------------------------------------------------- derivations
    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        missing = keep - set(self._inc)
        if missing:
            raise NotFoundError(f"vertices {sorted(missing)[:5]} not in graph")
        return Graph(keep, (e for e in self.edges if e.u in keep and e.v in keep))

    def edge_subgraph(self, eids: Iterable[int], vertices: Iterable[int] = ()) -> "Graph":
        es = [self.edge(i) for i in sorted(set(eids))]
        vs = set(vertices) | {x for e in es for x in (e.u, e.v)}
        return Graph(vs, es)

    def without_edges(self, eids: Iterable[int]) -> "Graph":
        drop = set(eids)
        return Graph(self._inc, (e for e in self.edges if e.id not in drop))

    def with_edges(self, new_edges: Iterable, vertices: Iterable[int] = ()) -> "Graph":
        """Return a copy with extra vertices and ``(id, u, v, color)`` edges."""
        return Graph(set(self._inc) | set(vertices), list(self.edges) + list(new_edges))

    def recolored(self, colors: Mapping[int, str]) -> "Graph":
        return Graph(
            self._inc, (e._replace(color=colors.get(e.id, e.color)) for e in self.edges)
        )

    def to_networkx(self):
        import networkx as nx

        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.u, e.v, key=e.id, color=e.color)
        return g

    def to_weighted_networkx(self):
        """Simple ``nx.Graph`` whose ``weight`` counts parallel edges."""
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            if g.has_edge(e.u, e.v):
                g[e.u][e.v]["weight"] += 1
            else:
                g.add_edge(e.u, e.v, weight=1)
        return g

    # ------------------------------------------------------------------- edits
    def delete_edge(self, eid: int) -> "Graph":
        return edit(self, Edit("delete_edge", eid)).graph

    def delete_vertex(self, v: int) -> "Graph":
        return edit(self, Edit("delete_vertex", v)).graph

    def contract_edge(self, eid: int) -> "Graph":
        return edit(self, Edit("contract_edge", eid)).graph

    # ----------------------------------------------------------------- dunders
    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph(n={self.number_of_vertices()}, m={self.number_of_edges()})"

    def digest(self) -> str:
        return hashlib.sha256(
            json.dumps(graph_to_dict(self), sort_keys=True).encode()
        ).hexdigest()


# ---------------------------------------------------------------------------
# edits with model bookkeeping


@dataclass(frozen=True)
class Edit:
    kind: str  # delete_edge | delete_vertex | contract_edge
    target: int


@dataclass(frozen=True)
class EditRecord:
    kind: str
    removed_vertices: tuple = ()
    removed_edges: tuple = ()
    survivor: int | None = None
    absorbed: int | None = None


@dataclass(frozen=True)
class EditResult:
    graph: Graph
    record: EditRecord

    def update(self, model: "MinorModel") -> "MinorModel":
        """Carry a minor model of the pre-edit graph over to the edited graph."""
        return model.after(self.record)


def edit(g: Graph, op: Edit) -> EditResult:
    """Apply one minor operation and return the new graph plus its edit record."""
    if op.kind == "delete_edge":
        e = g.edge(op.target)
        edges = dict(g._edges)
        del edges[e.id]
        inc = dict(g._inc)
        inc[e.u] = inc[e.u] - {e.id}
        inc[e.v] = inc[e.v] - {e.id}
        keys = dict(g._keys)
        del keys[e.key]
        return EditResult(Graph._raw(edges, inc, keys), EditRecord("delete_edge", (), (e.id,)))
    if op.kind == "delete_vertex":
        v = op.target
        gone = g.incident(v)
        edges = {i: e for i, e in g._edges.items() if i not in set(gone)}
        inc = {}
        for x, s in g._inc.items():
            if x != v:
                inc[x] = s - set(gone) if s & set(gone) else s
        keys = {e.key: e.id for e in edges.values()}
        return EditResult(
            Graph._raw(edges, inc, keys), EditRecord("delete_vertex", (v,), tuple(gone))
        )
    if op.kind == "contract_edge":
        e = g.edge(op.target)
        keep, gone = min(e.u, e.v), max(e.u, e.v)
        edges = {i: x for i, x in g._edges.items()}
        removed = []
        touched = set()
        for i in sorted(g._inc[gone]):
            x = edges.pop(i)
            w = x.other(gone)
            if w == keep:
                removed.append(i)
                continue
            touched.add(i)
            edges[i] = Edge(i, keep, w, x.color) if x.u == gone else Edge(i, w, keep, x.color)
        # merge same-colored parallels created around the survivor
        best: dict = {}
        for i in sorted(g._inc[keep] | touched):
            if i not in edges:
                continue
            k = edges[i].key
            if k in best:
                removed.append(i)
                del edges[i]
            else:
                best[k] = i
        keys = {x.key: x.id for x in edges.values()}
        inc = {x: set(s) for x, s in g._inc.items() if x != gone}
        rem = set(removed)
        for x in inc:
            inc[x] -= rem
        inc[keep] = {i for i in (g._inc[keep] | touched) if i in edges}
        for i in touched:
            if i in edges:
                inc[edges[i].other(keep)].add(i)
        return EditResult(
            Graph._raw(edges, inc, keys),
            EditRecord("contract_edge", (gone,), tuple(sorted(rem)), keep, gone),
        )
    raise ValueError(f"unknown edit kind {op.kind!r}")


# ---------------------------------------------------------------------------
# minor models


@dataclass(frozen=True)
class MinorModel:
    """Branch sets and edge realizations of a minor inside a host graph."""

    branch_sets: Mapping[int, frozenset]
    edge_map: Mapping[int, int]

    @classmethod
    def identity(cls, g: Graph) -> "MinorModel":
        return cls({v: frozenset([v]) for v in g.vertices}, {e.id: e.id for e in g.edges})

    def after(self, record: EditRecord) -> "MinorModel":
        branch = dict(self.branch_sets)
        emap = {k: v for k, v in self.edge_map.items() if k not in set(record.removed_edges)}
        if record.kind == "delete_vertex":
            for v in record.removed_vertices:
                branch.pop(v, None)
        elif record.kind == "contract_edge":
            branch[record.survivor] = branch[record.survivor] | branch.pop(record.absorbed)
        return MinorModel(branch, emap)

    def to_dict(self) -> dict:
        return {
            "branch_sets": {str(k): sorted(v) for k, v in sorted(self.branch_sets.items())},
            "edge_map": {str(k): v for k, v in sorted(self.edge_map.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MinorModel":
        return cls(
            {int(k): frozenset(v) for k, v in d["branch_sets"].items()},
            {int(k): int(v) for k, v in d["edge_map"].items()},
        )


def verify_minor_model(
    host: Graph, minor: Graph, model: MinorModel, respecting: Iterable[int] = ()
) -> Verdict:
    """Check every defining clause of a minor model; collect all violations."""
    out = Verdict()
    branch = model.branch_sets
    for v in minor.vertices:
        if v not in branch or not branch[v]:
            out.fail("branch-set", f"minor vertex {v} has no branch set")
            continue
        bad = [x for x in branch[v] if not host.has_vertex(x)]
        if bad:
            out.fail("branch-set", f"branch set of {v} names missing host vertices {bad}")
        elif not host.is_connected(branch[v]):
            out.fail("connectivity", f"branch set of {v} is not connected")
    owner = {}
    for v in sorted(branch):
        for x in branch[v]:
            if x in owner:
                out.fail("disjointness", f"host vertex {x} in branch sets {owner[x]} and {v}")
            owner[x] = v
    for e in minor.edges:
        if e.id not in model.edge_map:
            out.fail("edge-realization", f"minor edge {e.id} has no host edge")
            continue
        hid = model.edge_map[e.id]
        if not host.has_edge(hid):
            out.fail("edge-realization", f"minor edge {e.id} maps to missing host edge {hid}")
            continue
        he = host.edge(hid)
        bu, bv = branch.get(e.u, frozenset()), branch.get(e.v, frozenset())
        if not ((he.u in bu and he.v in bv) or (he.u in bv and he.v in bu)):
            out.fail("edge-realization", f"host edge {hid} does not join branch sets of {e.u}, {e.v}")
    used = list(model.edge_map.values())
    if len(used) != len(set(used)):
        out.fail("edge-realization", "two minor edges share a host edge")
    for x in respecting:
        if not minor.has_vertex(x) or branch.get(x) != frozenset([x]):
            out.fail("respecting", f"vertex {x} is not a singleton branch set of itself")
    return out


# ---------------------------------------------------------------------------
# subdivisions


@dataclass(frozen=True)
class TopoWitness:
    """Maps a topological minor into a host: vertices to vertices, edges to paths."""

    vertex_map: Mapping[int, int]
    edge_paths: Mapping[int, tuple]

    def to_dict(self) -> dict:
        return {
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "edge_paths": {str(k): list(p) for k, p in sorted(self.edge_paths.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TopoWitness":
        return cls(
            {int(k): int(v) for k, v in d["vertex_map"].items()},
            {int(k): tuple(int(x) for x in p) for k, p in d["edge_paths"].items()},
        )


def verify_topo_witness(host: Graph, minor: Graph, w: TopoWitness) -> Verdict:
    out = Verdict()
    image = {}
    for v in minor.vertices:
        if v not in w.vertex_map:
            out.fail("vertex-map", f"minor vertex {v} unmapped")
            continue
        x = w.vertex_map[v]
        if not host.has_vertex(x):
            out.fail("vertex-map", f"minor vertex {v} maps to missing host vertex {x}")
        if x in image:
            out.fail("injectivity", f"minor vertices {image[x]} and {v} both map to {x}")
        image[x] = v
    interior_owner = {}
    direct = {}
    for e in minor.edges:
        path = w.edge_paths.get(e.id)
        if path is None or len(path) < 2:
            out.fail("edge-path", f"minor edge {e.id} has no host path")
            continue
        ends = {w.vertex_map.get(e.u), w.vertex_map.get(e.v)}
        if {path[0], path[-1]} != ends:
            out.fail("endpoints", f"path of edge {e.id} does not join the images of its ends")
        if len(set(path)) != len(path):
            out.fail("simple", f"path of edge {e.id} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not host.edges_between(a, b):
                out.fail("host-edge", f"path of edge {e.id} uses non-edge ({a}, {b})")
        for x in path[1:-1]:
            if x in image:
                out.fail("interior", f"path of edge {e.id} passes through image vertex {x}")
            if x in interior_owner:
                out.fail(
                    "internal-disjointness",
                    f"edges {interior_owner[x]} and {e.id} share internal vertex {x}",
                )
            interior_owner[x] = e.id
        if len(path) == 2:
            k = (min(path), max(path))
            direct[k] = direct.get(k, 0) + 1
    for (a, b), count in direct.items():
        if count > len(host.edges_between(a, b)):
            out.fail("internal-disjointness", f"{count} minor edges share host edge(s) ({a}, {b})")
    return out


def tau(g: Graph) -> int:
    """Number of vertices of degree at least three."""
    return sum(1 for v in g.vertices if g.degree(v) >= 3)


def suppress_degree2(g: Graph, keep: Iterable[int] = ()) -> tuple:
    """Replace maximal monochromatic 2-paths by single edges.

    A vertex is suppressible when it is not in ``keep``, has degree two, and
    its two edges carry the same color, so a path whose color changes is split
    at the change. A 2-path is shortened only as far as the loop and
    same-color-parallel rules allow; pure cycles stop at three vertices. New
    edges reuse the smallest edge id of the stretch they replace.

    Returns ``(graph, witness)`` with the witness mapping the result into ``g``.
    """
    keep = set(keep)
    missing = keep - set(g.vertices)
    if missing:
        raise NotFoundError(f"keep vertices {sorted(missing)[:5]} not in graph")

    def suppressible(v):
        if v in keep or g.degree(v) != 2:
            return False
        a, b = (g.edge(i) for i in g.incident(v))
        return a.color == b.color

    cand = {v for v in g.vertices if suppressible(v)}

    def walk(first, frm):
        verts, eids, cur_e, cur = [frm], [], first, frm
        while True:
            eids.append(cur_e)
            nxt = g.edge(cur_e).other(cur)
            verts.append(nxt)
            if nxt not in cand or nxt == frm:
                return verts, eids
            a, b = g.incident(nxt)
            cur_e = b if a == cur_e else a
            cur = nxt

    stretches, consumed, covered = [], set(), set()
    for v in g.vertices:
        if v in cand:
            continue
        for e in g.incident(v):
            if e not in consumed and g.edge(e).other(v) in cand:
                verts, eids = walk(e, v)
                consumed.update(eids)
                covered.update(verts[1:-1])
                stretches.append((verts, eids, False))
    for v in sorted(cand - covered):
        if v in covered:
            continue
        verts, eids = walk(g.incident(v)[0], v)
        consumed.update(eids)
        covered.update(verts)
        # rotate so the ring starts at its smallest vertex
        body = verts[:-1]
        i = body.index(min(body))
        stretches.append((body[i:] + body[:i] + [body[i]], eids[i:] + eids[:i], True))

    edges = {e.id: e for e in g.edges if e.id not in consumed}
    keys = {e.key for e in edges.values()}
    paths = {e.id: (e.u, e.v) for e in edges.values()}
    kept = set(g.vertices) - covered
    for verts, eids, ring in stretches:
        color = g.edge(eids[0]).color
        u, w = verts[0], verts[-1]
        if ring:
            cuts = [0, 1, 2, len(verts) - 1] if len(verts) > 4 else list(range(len(verts)))
        elif u != w and (min(u, w), max(u, w), color) not in keys:
            cuts = [0, len(verts) - 1]
        elif u == w:
            cuts = [0, 1, 2, len(verts) - 1] if len(verts) > 4 else list(range(len(verts)))
        else:
            cuts = [0, 1, len(verts) - 1] if len(verts) > 3 else list(range(len(verts)))
        for a, b in zip(cuts, cuts[1:]):
            eid = min(eids[a:b])
            ne = Edge(eid, verts[a], verts[b], color)
            edges[eid] = ne
            keys.add(ne.key)
            paths[eid] = tuple(verts[a : b + 1])
            kept.update((verts[a], verts[b]))
    out = Graph(kept, (edges[i] for i in sorted(edges)))
    return out, TopoWitness({v: v for v in out.vertices}, paths)


# ---------------------------------------------------------------------------
# serialization


def graph_to_dict(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [[e.id, e.u, e.v, e.color] for e in g.edges],
    }


def graph_from_dict(d: dict) -> Graph:
    try:
        return Graph(d["vertices"], (Edge(int(i), int(u), int(v), c) for i, u, v, c in d["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed graph object: {exc}") from exc


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v [color]`` lines; ``#`` starts a comment; a lone ``v`` adds a vertex."""
    pairs, lone = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if len(tok) == 1:
                lone.append(int(tok[0]))
            elif len(tok) in (2, 3):
                color = tok[2] if len(tok) == 3 else NONE
                if color not in COLORS:
                    raise ValueError(f"unknown color {color!r}")
                pairs.append((int(tok[0]), int(tok[1]), color))
            else:
                raise ValueError("expected 'u v [color]'")
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    try:
        return Graph.from_edges(pairs, lone)
    except InvariantError as exc:
        raise FormatError(str(exc)) from exc


def read_graph(path) -> Graph:
    """Load a graph from JSON (``.json``) or edge-list text."""
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
        return graph_from_dict(d.get("graph", d))
    return parse_edge_list(text)


__all__ = [
    "RED",
    "BLUE",
    "RED_BLUE",
    "NONE",
    "COLORS",
    "Edge",
    "Edit",
    "EditResult",
    "Graph",
    "MinorModel",
    "TopoWitness",
    "Verdict",
    "edit",
    "graph_from_dict",
    "graph_to_dict",
    "parse_edge_list",
    "read_graph",
    "suppress_degree2",
    "tau",
    "verify_minor_model",
    "verify_topo_witness",
]
