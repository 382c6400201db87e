"""Brute-force reference implementations used only by the tests.

Nothing here imports the search code it is checking; each oracle works
straight from the definitions on tiny inputs.
"""
from __future__ import annotations

import itertools

import networkx as nx

from elbowcover.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if all(colors[u] != colors[v] for u, v in g.edges):
                return k
    raise AssertionError("unreachable")


def all_orientations(g: Graph):
    for flips in itertools.product((False, True), repeat=g.m):
        yield tuple(u if f else v for (u, v), f in zip(g.edges, flips))


def served_pairs(g: Graph, heads, kind: str) -> frozenset:
    out = set()
    for e, f in itertools.combinations(range(g.m), 2):
        shared = set(g.edges[e]) & set(g.edges[f])
        if len(shared) != 1:
            continue
        x = shared.pop()
        into_e, into_f = heads[e] == x, heads[f] == x
        if (into_e and into_f) if kind == "in-elbow" else into_e == into_f:
            out.add((e, f))
    return frozenset(out)


def min_orientation_cover(g: Graph, kind: str, k_max: int = 3) -> int | None:
    """Smallest k such that some k orientations serve every adjacent pair."""
    need = frozenset(
        (e, f) for e, f in itertools.combinations(range(g.m), 2)
        if len(set(g.edges[e]) & set(g.edges[f])) == 1
    )
    if not need:
        return 0
    options = sorted({served_pairs(g, h, kind) for h in all_orientations(g)}, key=len, reverse=True)
    for k in range(1, k_max + 1):
        for combo in itertools.combinations(options, k):
            if frozenset().union(*combo) == need:
                return k
    return None


def serves(orders, a, b, c, mixing: bool) -> bool:
    for o in orders:
        pa, pb, pc = o.index(a), o.index(b), o.index(c)
        if pa > pb and pa > pc:
            return True
        if mixing and pa < pb and pa < pc:
            return True
    return False


def has_property(orders, c: int, mixing: bool) -> bool:
    return all(
        serves(orders, a, b, x, mixing)
        for a in range(c) for b, x in itertools.combinations([y for y in range(c) if y != a], 2)
    )


def min_family_size(c: int, mixing: bool) -> int:
    perms = list(itertools.permutations(range(c)))
    for k in itertools.count(1):
        if any(has_property(combo, c, mixing) for combo in itertools.combinations(perms, k)):
            return k
    raise AssertionError("unreachable")


def is_interval_by_clique_path(g: Graph) -> bool | None:
    """Gilmore-Hoffman: maximal cliques can be ordered so each vertex's cliques are consecutive.

    Returns None when there are too many maximal cliques to try every order.
    """
    h = to_nx(g)
    if not nx.is_chordal(h):
        return False
    cliques = [frozenset(c) for c in nx.find_cliques(h)]
    if len(cliques) > 7:
        return None
    for perm in itertools.permutations(cliques):
        if all(
            _consecutive([i for i, c in enumerate(perm) if v in c]) for v in range(g.n)
        ):
            return True
    return False


def _consecutive(idx: list[int]) -> bool:
    return not idx or idx[-1] - idx[0] + 1 == len(idx)


def is_simplicial_suffix_order(g: Graph, order) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adjacency[v] if pos[w] > pos[v]]
        for a, b in itertools.combinations(later, 2):
            if not g.has_edge(a, b):
                return False
    return True
