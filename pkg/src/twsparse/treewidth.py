"""Exact treewidth for small graphs, used only to cross-check certificates.

The graph is split into biconnected blocks (treewidth is the maximum over
blocks). Each block gets a minor-min-width lower bound and a min-fill upper
bound; if they differ, a decision search over elimination prefixes settles
each candidate width. A prefix ``S`` extends by ``v`` when the set of vertices
outside ``S + v`` reachable from ``v`` through ``S`` has at most ``k`` members.
"""

from __future__ import annotations

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .graph import Graph

MAX_EXACT_VERTICES = 40


def _minor_min_width(h: nx.Graph) -> int:
    h = nx.Graph(h)
    best = 0
    while h.number_of_nodes() > 1:
        v = min(h.nodes, key=lambda x: (h.degree(x), x))
        d = h.degree(v)
        best = max(best, d)
        if d == 0:
            h.remove_node(v)
            continue
        u = min(h[v], key=lambda x: (h.degree(x), x))
        h = nx.contracted_nodes(h, u, v, self_loops=False)
    return best


def _decide(adj: list, k: int) -> bool:
    """Is there an elimination order of width at most ``k``?"""
    n = len(adj)
    full = (1 << n) - 1
    if n <= k + 1:
        return True

    def q_size(S: int, v: int) -> int:
        inside = S | (1 << v)
        seen = 1 << v
        stack = [v]
        frontier = 0
        while stack:
            x = stack.pop()
            nb = adj[x]
            frontier |= nb & ~inside
            new = nb & S & ~seen
            while new:
                low = new & -new
                seen |= low
                stack.append(low.bit_length() - 1)
                new ^= low
        return bin(frontier).count("1")

    level = {0}
    seen_sets = {0}
    while level:
        nxt = set()
        for S in level:
            if n - bin(S).count("1") <= k + 1:
                return True
            rest = full & ~S
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                T = S | low
                if T in seen_sets:
                    continue
                if q_size(S, v) <= k:
                    seen_sets.add(T)
                    nxt.add(T)
        level = nxt
    return False


def _block_width(h: nx.Graph) -> int:
    n = h.number_of_nodes()
    if n <= 1:
        return 0
    if h.number_of_edges() == n * (n - 1) // 2:
        return n - 1
    lo = _minor_min_width(h)
    hi, _ = treewidth_min_fill_in(h)
    if lo >= hi:
        return hi
    if n > MAX_EXACT_VERTICES:
        raise ValueError(f"exact treewidth limited to {MAX_EXACT_VERTICES} vertices per block")
    order = sorted(h.nodes)
    idx = {v: i for i, v in enumerate(order)}
    adj = [0] * n
    for a, b in h.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    for k in range(lo, hi):
        if _decide(adj, k):
            return k
    return hi


def exact_treewidth(g: Graph) -> int:
    """Treewidth of ``g`` (parallel edges and colors are irrelevant)."""
    h = g.to_networkx()
    if h.number_of_nodes() == 0:
        return -1
    if h.number_of_edges() == 0:
        return 0
    simple = nx.Graph(h)
    width = 0
    for block in nx.biconnected_components(simple):
        width = max(width, _block_width(simple.subgraph(block)))
    return width


__all__ = ["exact_treewidth"]
