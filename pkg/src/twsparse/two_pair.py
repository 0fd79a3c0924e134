"""Routing two pairs of vertex sets through a minimal minor.

Pipeline: :func:`pad_and_attach` balances the pairs with dummy edges and hangs
a fresh degree-1 copy off every terminal; :func:`minimal_good_minor` shrinks
the padded graph by deletions and contractions until no edit keeps both pairs
routable; :func:`build_chains` and :func:`verify_chain_properties` audit the
alternating-chain structure that bounds the minor's size; and
:func:`lift_to_original` turns the minor's routings back into paths of the
input graph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace

from .exceptions import InfeasibleError, InvariantError
from .graph import (
    BLUE,
    NONE,
    RED,
    Edge,
    Edit,
    Graph,
    MinorModel,
    Verdict,
    edit,
    graph_to_dict,
    tau,
    verify_minor_model,
)
from .routing import PathSet, max_disjoint_paths, reroute, route_node_disjoint

log = logging.getLogger(__name__)

CYCLE_SEARCH_BUDGET = 2_000_000


def size_bound(k: int) -> int:
    """Largest vertex count a minimal minor may have for pairs of size ``k``."""
    return 4 * k**4 + 4 * k


def tau_bound(k: int) -> int:
    return 8 * k**4 + 8 * k


@dataclass(frozen=True)
class TwoPairInstance:
    """Padded host plus the bookkeeping needed to map back to the input."""

    graph: Graph
    original: Graph
    S1: tuple
    T1: tuple
    S2: tuple
    T2: tuple
    S1p: tuple
    T1p: tuple
    S2p: tuple
    T2p: tuple
    attach: dict
    dummy_edges: tuple
    swapped: bool = False

    @property
    def k(self) -> int:
        return len(self.S1p)

    @property
    def terminals(self) -> frozenset:
        return frozenset(self.S1p + self.T1p + self.S2p + self.T2p)

    @property
    def padded(self) -> bool:
        return True

    def red_pair(self):
        return self.S1p, self.T1p

    def blue_pair(self):
        return self.S2p, self.T2p

    def to_dict(self) -> dict:
        return {
            "S1": list(self.S1),
            "T1": list(self.T1),
            "S2": list(self.S2),
            "T2": list(self.T2),
            "S1p": list(self.S1p),
            "T1p": list(self.T1p),
            "S2p": list(self.S2p),
            "T2p": list(self.T2p),
            "attach": {str(c): x for c, x in sorted(self.attach.items())},
            "dummy_edges": [list(d) for d in self.dummy_edges],
            "swapped": self.swapped,
        }


def _uncolored(g: Graph) -> Graph:
    """Copy of ``g`` with every edge tagged ``none``; parallels collapse to the lowest id."""
    seen = set()
    edges = []
    for e in g.edges:
        key = (min(e.u, e.v), max(e.u, e.v))
        if key in seen:
            continue
        seen.add(key)
        edges.append(Edge(e.id, e.u, e.v, NONE))
    return Graph(g.vertices, edges)


def pad_and_attach(g: Graph, S1, T1, S2, T2) -> TwoPairInstance:
    """Balance the pairs and attach a degree-1 copy to every terminal.

    Requires ``|S2| <= |S1|``. The ``k1 - k2`` dummy edges ``(a_j, b_j)``
    and all copies get fresh ids above those of ``g``.
    """
    S1, T1, S2, T2 = (tuple(sorted(set(x))) for x in (S1, T1, S2, T2))
    if len(S1) != len(T1) or len(S2) != len(T2):
        raise ValueError("each pair must consist of two sets of equal size")
    if len(S2) > len(S1):
        raise ValueError("the second pair must not be larger than the first")
    for name, (S, T) in (("first", (S1, T1)), ("second", (S2, T2))):
        missing = (set(S) | set(T)) - set(g.vertices)
        if missing:
            raise ValueError(f"{name} pair mentions unknown vertices {sorted(missing)[:5]}")
        paths, cut = max_disjoint_paths(g, S, T)
        if len(paths) < len(S):
            raise InfeasibleError(f"the {name} pair is not routable", cut)

    base = _uncolored(g)
    edges = list(base.edges)
    vertices = list(base.vertices)
    nv = g.max_vertex_id() + 1
    ne = g.max_edge_id() + 1
    S2x, T2x = list(S2), list(T2)
    dummies = []
    for _ in range(len(S1) - len(S2)):
        a, b = nv, nv + 1
        nv += 2
        edges.append(Edge(ne, a, b))
        dummies.append((ne, a, b))
        ne += 1
        vertices += [a, b]
        S2x.append(a)
        T2x.append(b)
    attach = {}
    copies = []
    for group in (S1, T1, tuple(S2x), tuple(T2x)):
        out = []
        for x in group:
            attach[nv] = x
            edges.append(Edge(ne, nv, x))
            vertices.append(nv)
            out.append(nv)
            nv += 1
            ne += 1
        copies.append(tuple(out))
    padded = Graph(vertices, edges)
    inst = TwoPairInstance(
        padded, g, S1, T1, tuple(S2x), tuple(T2x), *copies, attach, tuple(dummies)
    )
    for S, T in (inst.red_pair(), inst.blue_pair()):
        paths, _ = max_disjoint_paths(padded, S, T)
        if len(paths) != len(S):
            raise InvariantError("padding destroyed routability")
    return inst


# ---------------------------------------------------------------------------
# minimality


@dataclass
class GoodMinor:
    """A minimal minor of the padded host with its two unique routings."""

    H: Graph
    model: MinorModel
    red: PathSet
    blue: PathSet
    certificate: dict
    instance: TwoPairInstance
    stats: dict = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.instance.k

    @property
    def terminals(self) -> frozenset:
        return self.instance.terminals

    def to_dict(self) -> dict:
        return {
            "H": graph_to_dict(self.H),
            "model": self.model.to_dict(),
            "red": self.red.to_dict(),
            "blue": self.blue.to_dict(),
            "certificate": {str(k): v for k, v in sorted(self.certificate.items())},
            "instance": self.instance.to_dict(),
            "stats": self.stats,
        }


def _uses_pair(path, u, v) -> bool:
    return any({a, b} == {u, v} for a, b in zip(path, path[1:]))


def _after_contraction(path, keep, gone):
    p = [keep if x == gone else x for x in path]
    if p.count(keep) > 1:
        i = p.index(keep)
        j = len(p) - 1 - p[::-1].index(keep)
        p = p[:i] + p[j:]
    return tuple(p)


def _try_family(g2, pair, paths):
    """Reroute ``pair`` in ``g2`` starting from the still-valid members of ``paths``."""
    seen = set()
    warm = []
    for p in paths:
        if seen.isdisjoint(p):
            warm.append(p)
            seen.update(p)
    if len(warm) == len(paths):
        return list(paths)
    return reroute(g2, pair[0], pair[1], warm)


def _delete_test(g, pair_paths, e):
    """Outcome of deleting ``e``: new routings or the name of the pair that breaks."""
    g2 = edit(g, Edit("delete_edge", e.id))
    out = []
    broken = []
    for name, pair, paths in pair_paths:
        valid = [p for p in paths if not _uses_pair(p, e.u, e.v)]
        if len(valid) == len(paths):
            out.append(paths)
            continue
        new = reroute(g2.graph, pair[0], pair[1], valid)
        if new is None:
            broken.append(name)
        out.append(new)
    return g2, out, broken


def _contract_test(g, pair_paths, e):
    g2 = edit(g, Edit("contract_edge", e.id))
    keep, gone = g2.record.survivor, g2.record.absorbed
    out = []
    broken = []
    for name, pair, paths in pair_paths:
        mapped = [_after_contraction(p, keep, gone) for p in paths]
        new = _try_family(g2.graph, pair, mapped)
        if new is None:
            broken.append(name)
        out.append(new)
    return g2, out, broken


def _drop_isolated(g, model, terminals):
    for v in g.vertices:
        if g.degree(v) == 0 and v not in terminals:
            r = edit(g, Edit("delete_vertex", v))
            g, model = r.graph, r.update(model)
    return g, model


def minimal_good_minor(inst: TwoPairInstance) -> GoodMinor:
    """Shrink the padded host to a minimal minor in which both pairs stay routable.

    Every edge not used by one fixed pair of routings is deleted first (each of
    those deletions is individually valid). The fixpoint loop then scans
    deletions by ascending edge id, then contractions by ascending edge id
    (edges at terminals are never contracted), applies the first edit that
    keeps both pairs routable, and restarts. Isolated non-terminal vertices
    are deleted as they appear.
    """
    g = inst.graph
    model = MinorModel.identity(g)
    terminals = inst.terminals
    red_pair, blue_pair = inst.red_pair(), inst.blue_pair()
    red = [tuple(p) for p in route_node_disjoint(g, *red_pair).paths]
    blue = [tuple(p) for p in route_node_disjoint(g, *blue_pair).paths]

    used = set()
    for p in red + blue:
        for a, b in zip(p, p[1:]):
            used.add(g.edges_between(a, b)[0])
    for e in g.edges:
        if e.id not in used:
            r = edit(g, Edit("delete_edge", e.id))
            g, model = r.graph, r.update(model)
    pruned = g.number_of_edges()
    g, model = _drop_isolated(g, model, terminals)

    deletions = contractions = tests = 0
    while True:
        pair_paths = [("red", red_pair, red), ("blue", blue_pair, blue)]
        applied = None
        for e in g.edges:
            tests += 1
            res, new, broken = _delete_test(g, pair_paths, e)
            if not broken:
                applied, deletions = (res, new), deletions + 1
                break
        if applied is None:
            for e in g.edges:
                if e.u in terminals or e.v in terminals:
                    continue
                tests += 1
                res, new, broken = _contract_test(g, pair_paths, e)
                if not broken:
                    applied, contractions = (res, new), contractions + 1
                    break
        if applied is None:
            break
        res, (red, blue) = applied
        g, model = res.graph, res.update(model)
        g, model = _drop_isolated(g, model, terminals)

    H, red_ps, blue_ps = _colour(g, red_pair, blue_pair)
    cert = minimality_certificate(H, inst)
    stats = {
        "edges_after_prune": pruned,
        "deletions": deletions,
        "contractions": contractions,
        "edit_tests": tests,
        "vertices": H.number_of_vertices(),
        "bound": size_bound(inst.k),
    }
    log.debug("minimal minor: %s", stats)
    return GoodMinor(H, model, red_ps, blue_ps, cert, inst, stats)


def _colour(g, red_pair, blue_pair):
    red = route_node_disjoint(g, *red_pair, role=RED)
    blue = route_node_disjoint(g, *blue_pair, role=BLUE)
    colours = {}
    for ps, c in ((red, RED), (blue, BLUE)):
        for p in ps:
            for a, b in zip(p, p[1:]):
                eid = g.edges_between(a, b)[0]
                if colours.get(eid, c) != c:
                    raise InvariantError(f"edge {eid} lies on a red and a blue path")
                colours[eid] = c
    stray = [e.id for e in g.edges if e.id not in colours]
    if stray:
        raise InvariantError(f"edges {stray[:5]} lie on no path of a minimal minor")
    return g.recolored(colours), red, blue


def _both_routable(g, inst) -> list:
    broken = []
    for name, (S, T) in (("red", inst.red_pair()), ("blue", inst.blue_pair())):
        if not set(S) <= set(g.vertices) or not set(T) <= set(g.vertices):
            broken.append(name)
            continue
        paths, _ = max_disjoint_paths(g, S, T, limit=len(S))
        if len(paths) < len(S):
            broken.append(name)
    return broken


def minimality_certificate(H: Graph, inst: TwoPairInstance) -> dict:
    """For each edge, which pair breaks when it is deleted and when it is contracted.

    Contracting an edge at a terminal merges the terminal into another vertex,
    so the result is never terminal-respecting; such entries read ``terminal``.
    An empty list means the edit keeps both pairs routable.
    """
    out = {}
    terminals = inst.terminals
    for e in H.edges:
        entry = {"delete": _both_routable(edit(H, Edit("delete_edge", e.id)).graph, inst)}
        if e.u in terminals or e.v in terminals:
            entry["contract"] = "terminal"
        else:
            entry["contract"] = _both_routable(edit(H, Edit("contract_edge", e.id)).graph, inst)
        out[e.id] = entry
    return out


def verify_minimality(m: GoodMinor) -> Verdict:
    """Re-run the definitional edit tests on every edge of the minor."""
    out = Verdict()
    fresh = minimality_certificate(m.H, m.instance)
    for eid, entry in fresh.items():
        if not entry["delete"]:
            out.fail("delete", f"edge {eid} can be deleted")
        if entry["contract"] != "terminal" and not entry["contract"]:
            out.fail("contract", f"edge {eid} can be contracted")
        if m.certificate.get(eid) != entry:
            out.fail("certificate", f"stored entry for edge {eid} differs")
    if set(m.certificate) != set(fresh):
        out.fail("certificate", "certificate does not cover exactly the edges of H")
    return out


def verify_good_minor(m: GoodMinor) -> Verdict:
    """Structural invariants of a minimal two-pair minor."""
    out = Verdict()
    H, inst = m.H, m.instance
    terminals = inst.terminals
    mv = verify_minor_model(inst.graph, H, m.model, terminals)
    for clause, detail in mv.violations:
        out.fail("model/" + clause, detail)
    for ps, (S, T) in ((m.red, inst.red_pair()), (m.blue, inst.blue_pair())):
        v = ps.verify(H)
        for clause, detail in v.violations:
            out.fail(f"{ps.role}/{clause}", detail)
        again = route_node_disjoint(H, S, T, role=ps.role)
        if again.paths != ps.paths:
            out.fail("uniqueness", f"{ps.role} routing is not the one the flow returns")
    on_path = {}
    for ps in (m.red, m.blue):
        for p in ps:
            for a, b in zip(p, p[1:]):
                for eid in H.edges_between(a, b):
                    if H.edge(eid).color == ps.role:
                        on_path.setdefault(eid, set()).add(ps.role)
    for e in H.edges:
        if e.color not in (RED, BLUE):
            out.fail("colour", f"edge {e.id} is tagged {e.color}")
        elif on_path.get(e.id) != {e.color}:
            out.fail("colour", f"edge {e.id} is not on exactly one {e.color} path")
    red_of, blue_of = m.red.path_of(), m.blue.path_of()
    for v in H.vertices:
        if v in terminals:
            if H.degree(v) != 1:
                out.fail("terminal", f"terminal {v} has degree {H.degree(v)}")
            continue
        if v in red_of and v in blue_of:
            continue
        if not _lone_interior(H, v, terminals):
            out.fail("coverage", f"vertex {v} is not on one red and one blue path")
    if H.number_of_vertices() > size_bound(inst.k):
        out.fail("size", f"|V(H)|={H.number_of_vertices()} exceeds {size_bound(inst.k)}")
    return out


def _lone_interior(H, v, terminals) -> bool:
    """``v`` is the only interior vertex of a path between two terminals."""
    nb = [H.edge(i).other(v) for i in H.incident(v)]
    return len(nb) == 2 and all(x in terminals for x in nb)


# ---------------------------------------------------------------------------
# chains and labels


@dataclass
class ChainSystem:
    """Forward and reverse chain families with the labels they induce.

    Chains are stored as vertex sequences with the ids of the edges they use.
    In the reverse family the red paths are traversed from sink to source.
    """

    chains: list
    chain_edges: list
    labels: dict
    rchains: list
    rchain_edges: list
    rlabels: dict

    def to_dict(self) -> dict:
        return {
            "chains": [list(c) for c in self.chains],
            "chain_edges": [list(c) for c in self.chain_edges],
            "labels": {str(v): x for v, x in sorted(self.labels.items())},
            "reverse_chains": [list(c) for c in self.rchains],
            "reverse_chain_edges": [list(c) for c in self.rchain_edges],
            "reverse_labels": {str(v): x for v, x in sorted(self.rlabels.items())},
        }


def _directed(m: GoodMinor, reverse_red: bool):
    """Out-arcs ``v -> {colour: (edge id, head)}`` of the oriented minor."""
    out = {v: {} for v in m.H.vertices}
    arcs = []
    for ps in (m.red, m.blue):
        for p in ps:
            seq = p[::-1] if (reverse_red and ps.role == RED) else p
            for a, b in zip(seq, seq[1:]):
                eid = next(i for i in m.H.edges_between(a, b) if m.H.edge(i).color == ps.role)
                if ps.role in out[a]:
                    raise InvariantError(f"vertex {a} has two outgoing {ps.role} edges")
                out[a][ps.role] = (eid, b)
                arcs.append((eid, a, b, ps.role))
    return out, arcs


def _has_colour(H, v, colour) -> bool:
    return any(H.edge(i).color == colour for i in H.incident(v))


def _grow_chains(m: GoodMinor, reverse_red: bool):
    H = m.H
    inst = m.instance
    out, _ = _directed(m, reverse_red)
    first = inst.T1p if reverse_red else inst.S1p
    sources = sorted(first + inst.S2p)
    chains, chain_edges = [], []
    for s in sources:
        if not out[s]:
            raise InvariantError(f"source {s} has no outgoing edge")
        (colour, (eid, v)), = out[s].items()
        verts, eids = [s, v], [eid]
        used = {eid}
        while True:
            other = BLUE if colour == RED else RED
            if other in out[v]:
                nxt = other
            elif not _has_colour(H, v, other) and colour in out[v]:
                nxt = colour
            else:
                break
            eid, w = out[v][nxt]
            if eid in used:
                break
            used.add(eid)
            verts.append(w)
            eids.append(eid)
            colour, v = nxt, w
        chains.append(tuple(verts))
        chain_edges.append(tuple(eids))
    labels = {}
    for i, c in enumerate(chains):
        for v in c:
            labels.setdefault(v, i)
    return chains, chain_edges, labels


def build_chains(m: GoodMinor) -> ChainSystem:
    """Grow one alternating chain from every source, forward and with red reversed.

    A chain follows the unique outgoing edge of the other colour; at a vertex
    that carries no edge of the other colour at all it continues in its own
    colour; otherwise it stops. Each vertex gets the index of the first chain
    through it as its label.
    """
    c, ce, lab = _grow_chains(m, False)
    rc, rce, rlab = _grow_chains(m, True)
    return ChainSystem(c, ce, lab, rc, rce, rlab)


def _alternating_cycles(arcs, budget):
    """Find a red or blue cycle (see :func:`verify_chain_properties`).

    Returns ``(cycle_or_None, exhausted_budget)``.
    """
    import networkx as nx

    steps = 0
    for single in (RED, BLUE):
        # a blue cycle has isolated red edges; a red cycle isolated blue edges
        d = nx.DiGraph()
        for _, a, b, _ in arcs:
            d.add_edge(a, b)
        out = {}
        for eid, a, b, c in arcs:
            out.setdefault(a, []).append((eid, b, c))
        for comp in nx.strongly_connected_components(d):
            if len(comp) < 2:
                continue
            nodes = sorted(comp)
            for s in nodes:
                allowed = {x for x in comp if x >= s}
                stack = [(s, [], {s})]
                while stack:
                    steps += 1
                    if steps > budget:
                        return None, True
                    v, path, onp = stack.pop()
                    for eid, w, c in out.get(v, ()):
                        if w not in allowed:
                            continue
                        if path and c == single and path[-1][2] == single:
                            continue
                        if w == s:
                            cyc = path + [(eid, v, c)]
                            if _is_alternating(cyc, single):
                                return cyc, False
                            continue
                        if w in onp:
                            continue
                        stack.append((w, path + [(eid, v, c)], onp | {w}))
    return None, False


def _is_alternating(cyc, single) -> bool:
    colours = [c for _, _, c in cyc]
    if single not in colours or all(c == single for c in colours):
        return False
    n = len(colours)
    return all(not (colours[i] == single and colours[(i + 1) % n] == single) for i in range(n))


def _order_violations(chains, families):
    bad = []
    for zi, z in enumerate(chains):
        zpos = {v: i for i, v in enumerate(z)}
        for name, paths in families:
            for pi, p in enumerate(paths):
                shared = [v for v in p if v in zpos]
                if len(shared) < 2:
                    continue
                order = [zpos[v] for v in shared]
                if order != sorted(order):
                    bad.append(f"chain {zi} vs {name} path {pi}")
    return bad


def verify_chain_properties(m: GoodMinor, cs: ChainSystem, budget: int = CYCLE_SEARCH_BUDGET) -> Verdict:
    """Audit the chain structure of a minimal minor.

    Clauses: ``simple`` (no chain repeats a vertex), ``cover`` (every edge on a
    chain), ``cycle`` (no red or blue cycle in either orientation: a directed
    simple cycle made of one-colour stretches separated by single edges of
    the other colour), ``order`` (a chain meets every path in the path's
    order), ``labels`` (at most 2k labels per direction) and ``quadruple``
    (non-terminals have pairwise distinct (red path, blue path, label,
    reverse label)).
    """
    out = Verdict()
    H = m.H
    k = m.k
    for name, chains, edges in (("forward", cs.chains, cs.chain_edges), ("reverse", cs.rchains, cs.rchain_edges)):
        for i, c in enumerate(chains):
            if len(set(c)) != len(c):
                out.fail("simple", f"{name} chain {i} repeats a vertex")
        covered = {e for es in edges for e in es}
        missing = [e.id for e in H.edges if e.id not in covered]
        if missing:
            out.fail("cover", f"{name} chains miss edges {missing[:5]}")
    labels_used = (len(set(cs.labels.values())), len(set(cs.rlabels.values())))
    if max(labels_used) > 2 * k:
        out.fail("labels", f"{labels_used} labels for k={k}")
    if set(cs.labels) != set(H.vertices) or set(cs.rlabels) != set(H.vertices):
        out.fail("labels", "some vertex carries no label")

    exhausted = False
    for rev in (False, True):
        _, arcs = _directed(m, rev)
        cyc, ran_out = _alternating_cycles(arcs, budget)
        exhausted |= ran_out
        if cyc:
            out.fail("cycle", f"alternating cycle through edges {[e for e, _, _ in cyc]}")
    out.exact = not exhausted

    red = [tuple(p) for p in m.red]
    blue = [tuple(p) for p in m.blue]
    for bad in _order_violations(cs.chains, [("red", red), ("blue", blue)]):
        out.fail("order", "forward " + bad)
    rred = [p[::-1] for p in red]
    for bad in _order_violations(cs.rchains, [("red", rred), ("blue", blue)]):
        out.fail("order", "reverse " + bad)

    red_of, blue_of = m.red.path_of(), m.blue.path_of()
    seen = {}
    for v in H.vertices:
        if v in m.terminals or v not in red_of or v not in blue_of:
            continue
        q = (red_of[v][0], blue_of[v][0], cs.labels.get(v), cs.rlabels.get(v))
        if q in seen:
            out.fail("quadruple", f"vertices {seen[q]} and {v} share {q}")
        seen[q] = v
    out.details = {"quadruples": len(seen), "labels": labels_used}
    return out


# ---------------------------------------------------------------------------
# lifting


def _segment(path, a, b):
    i, j = path.index(a), path.index(b)
    return path[i : j + 1] if i <= j else path[j : i + 1][::-1]


def _lift_path(g, m, hpath, colour, red_inside=None):
    """Expand a minor path (terminal copies at both ends) into a path of ``g``.

    ``red_inside`` maps minor vertices to the red path's stretch inside their
    branch set; when given, the blue stretch is spliced onto it.
    """
    inst = m.instance
    branch = m.model.branch_sets
    H = m.H
    inner = hpath[1:-1]
    ports = []
    for a, b in zip(hpath, hpath[1:]):
        eid = next(i for i in H.edges_between(a, b) if H.edge(i).color == colour)
        host = inst.graph.edge(m.model.edge_map[eid])
        if host.u in branch[a] and host.v in branch[b]:
            ports.append((host.u, host.v))
        else:
            ports.append((host.v, host.u))
    pieces = {}
    out = []
    for i, v in enumerate(inner):
        entry, exit_ = ports[i][1], ports[i + 1][0]
        r2 = inst.graph.shortest_path(entry, exit_, within=branch[v])
        if r2 is None:
            raise InvariantError(f"branch set of {v} is not connected")
        r2 = list(r2)
        if red_inside is not None and v in red_inside:
            r1 = red_inside[v]
            hits = [x for x in r2 if x in set(r1)]
            if hits:
                u, w = hits[0], hits[-1]
                r2 = r2[: r2.index(u)] + list(_segment(list(r1), u, w)) + r2[r2.index(w) + 1 :]
        pieces[v] = tuple(r2)
        out.extend(r2)
    return tuple(out), pieces


def lift_to_original(g: Graph, m: GoodMinor):
    """Map the minor's routings to vertex-disjoint path families of ``g``.

    Returns ``(red, blue)`` path sets routing the instance's first and second
    pair in ``g``; blue paths through dummy edges are dropped.
    """
    inst = m.instance
    dummy_vertices = {x for _, a, b in inst.dummy_edges for x in (a, b)}
    red_paths = []
    red_inside = {}
    for p in m.red:
        lifted, pieces = _lift_path(g, m, p, RED)
        red_paths.append(lifted)
        red_inside.update(pieces)
    blue_paths = []
    for p in m.blue:
        lifted, _ = _lift_path(g, m, p, BLUE, red_inside)
        if any(x in dummy_vertices for x in lifted):
            continue
        blue_paths.append(lifted)
    red_paths.sort(key=lambda p: p[0])
    blue_paths.sort(key=lambda p: p[0])
    real_S2 = frozenset(x for x in inst.S2 if x not in dummy_vertices)
    real_T2 = frozenset(x for x in inst.T2 if x not in dummy_vertices)
    red = PathSet(tuple(red_paths), RED, frozenset(inst.S1), frozenset(inst.T1))
    blue = PathSet(tuple(blue_paths), BLUE, real_S2, real_T2)
    return red, blue


def union_graph(g: Graph, *families) -> Graph:
    """Subgraph of ``g`` formed by the lowest-id edges along the given paths."""
    eids = set()
    verts = set()
    for fam in families:
        for p in fam:
            verts.update(p)
            for a, b in zip(p, p[1:]):
                eids.add(g.edges_between(a, b)[0])
    return g.edge_subgraph(eids, verts)


@dataclass
class TwoPairResult:
    first: PathSet
    second: PathSet
    minor: GoodMinor
    union: Graph

    @property
    def tau(self) -> int:
        return tau(self.union)

    def __iter__(self):
        return iter((self.first, self.second, self.minor))


def route_two_pairs(g: Graph, S1, T1, S2, T2) -> TwoPairResult:
    """Route ``(S1, T1)`` and ``(S2, T2)`` so that their union has few branch vertices.

    The larger pair becomes the red pair of the minor. ``first`` and
    ``second`` always refer to the pairs in argument order; iterating the
    result yields ``(first, second, minor)``.
    """
    swapped = len(set(S2)) > len(set(S1))
    if swapped:
        S1, T1, S2, T2 = S2, T2, S1, T1
    inst = pad_and_attach(g, S1, T1, S2, T2)
    if swapped:
        inst = replace(inst, swapped=True)
    m = minimal_good_minor(inst)
    red, blue = lift_to_original(g, m)
    union = union_graph(g, red, blue)
    first, second = (blue, red) if swapped else (red, blue)
    return TwoPairResult(first, second, m, union)


__all__ = [
    "ChainSystem",
    "GoodMinor",
    "TwoPairInstance",
    "TwoPairResult",
    "build_chains",
    "lift_to_original",
    "minimal_good_minor",
    "minimality_certificate",
    "pad_and_attach",
    "route_two_pairs",
    "size_bound",
    "tau_bound",
    "union_graph",
    "verify_chain_properties",
    "verify_good_minor",
    "verify_minimality",
]
