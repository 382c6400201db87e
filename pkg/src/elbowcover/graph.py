"""Simple undirected graphs with a canonical edge order.

Edges are stored as ``(u, v)`` pairs with ``u < v``, sorted
lexicographically.  The position of an edge in :attr:`Graph.edges` is its
*edge index*; line graphs use edge indices as vertex ids, so this order is
what ties every other module together.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, GraphError

Edge = tuple[int, int]

GENERATOR_KINDS = ("complete", "cycle", "path", "star", "mycielskian-iterate", "random")


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {self.n}")
        prev = None
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge {(u, v)} is not canonical for n={self.n}")
            if prev is not None and (u, v) <= prev:
                raise GraphError("edge list is not strictly sorted")
            prev = (u, v)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adjacency_bits(self) -> tuple[int, ...]:
        bits = [0] * self.n
        for u, v in self.edges:
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return tuple(bits)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def adjacent_pairs(self) -> tuple[tuple[int, int, int], ...]:
        """All ``(e, f, x)`` with edge indices ``e < f`` meeting at vertex ``x``.

        Sorted by ``(e, f)``; this is the pair order used by every coverage
        bitmask in the toolkit.
        """
        pairs = []
        for x, inc in enumerate(self.incident_edges):
            for e, f in itertools.combinations(inc, 2):
                pairs.append((e, f, x))
        pairs.sort()
        return tuple(pairs)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def index_of(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        try:
            return self.edge_index[(u, v)]
        except KeyError:
            raise GraphError(f"{(u, v)} is not an edge") from None

    def subgraph_edges(self, edge_ids: Iterable[int]) -> "Graph":
        """Spanning subgraph keeping only the given edge indices."""
        return Graph(self.n, tuple(self.edges[i] for i in sorted(set(edge_ids))))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertices relabelled in the given order."""
        relabel = {v: i for i, v in enumerate(vertices)}
        es = []
        for u, v in self.edges:
            if u in relabel and v in relabel:
                a, b = relabel[u], relabel[v]
                es.append((a, b) if a < b else (b, a))
        return Graph(len(vertices), tuple(sorted(es)))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f"  {v};" for v in range(self.n)]
        lines += [f"  {u} -- {v};" for u, v in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(n: int, edges: Iterable[Sequence[int]], dedupe: bool = False) -> Graph:
    """Canonicalize an edge list into a :class:`Graph`.

    Self-loops and out-of-range endpoints are always rejected; duplicate
    edges are rejected unless ``dedupe`` is set.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    seen: set[Edge] = set()
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"edge {pair!r} must have two endpoints")
        u, v = int(pair[0]), int(pair[1])
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {(u, v)} has an endpoint outside [0, {n})")
        e = (u, v) if u < v else (v, u)
        if e in seen and not dedupe:
            raise GraphError(f"duplicate edge {e}")
        seen.add(e)
    return Graph(n, tuple(sorted(seen)))


# -- generators ---------------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """Star with centre 0 and ``leaves`` leaves."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def mycielskian(g: Graph) -> Graph:
    """One Mycielski step: copies ``u_i`` of each vertex plus a hub ``w``."""
    n = g.n
    edges = list(g.edges)
    for u, v in g.edges:
        edges.append((u, n + v))
        edges.append((v, n + u))
    hub = 2 * n
    edges.extend((n + i, hub) for i in range(n))
    return build_graph(2 * n + 1, edges)


def mycielski_iterate(k: int) -> Graph:
    """k=1: K_1, k=2: K_2, k=3: C_5, k=4: Groetzsch graph; chromatic number k."""
    if k < 1:
        raise GraphError("mycielski iterate index must be >= 1")
    if k == 1:
        return Graph(1)
    g = complete_graph(2)
    for _ in range(k - 2):
        g = mycielskian(g)
    return g


def random_graph(n: int, p: float, seed: int, triangle_free: bool = False) -> Graph:
    """G(n, p) with an explicit seed.

    With ``triangle_free`` the candidate pairs are visited in a seeded random
    order and each is kept with probability ``p`` unless it would close a
    triangle.
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"probability {p} outside [0, 1]")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    if not triangle_free:
        return Graph(n, tuple(e for e in pairs if rng.random() < p))
    rng.shuffle(pairs)
    nbrs = [0] * n
    kept = []
    for u, v in pairs:
        if rng.random() < p and not (nbrs[u] & nbrs[v]):
            nbrs[u] |= 1 << v
            nbrs[v] |= 1 << u
            kept.append((u, v))
    return Graph(n, tuple(sorted(kept)))


def graph_generate(kind: str, n: int | None = None, k: int | None = None,
                   p: float | None = None, seed: int | None = None,
                   triangle_free: bool = False) -> Graph:
    """Dispatch to a named generator; ``k`` is only used by mycielskian-iterate."""
    if kind not in GENERATOR_KINDS:
        raise GraphError(f"unknown generator kind {kind!r}")
    if kind == "mycielskian-iterate":
        if k is None:
            raise GraphError("mycielskian-iterate needs k")
        return mycielski_iterate(k)
    if n is None or n < 1:
        raise GraphError(f"{kind} needs a size parameter n >= 1")
    if kind == "complete":
        return complete_graph(n)
    if kind == "cycle":
        return cycle_graph(n)
    if kind == "path":
        return path_graph(n)
    if kind == "star":
        return star_graph(n)
    if p is None or seed is None:
        raise GraphError("random graphs need a probability and an explicit seed")
    return random_graph(n, p, seed, triangle_free=triangle_free)


# -- line graphs --------------------------------------------------------------

@dataclass(frozen=True)
class LineGraphMap:
    """A base graph together with its line graph.

    Line vertex ``i`` is base edge ``i``, so the bijection is the identity on
    the canonical edge order.
    """

    base: Graph
    line: Graph

    def edge_to_vertex(self, e: int) -> int:
        return e

    def shared_vertex(self, e: int, f: int) -> int:
        a, b = self.base.edges[e]
        c, d = self.base.edges[f]
        common = {a, b} & {c, d}
        if len(common) != 1:
            raise GraphError(f"edges {e} and {f} do not share exactly one endpoint")
        return common.pop()


def line_graph(g: Graph) -> LineGraphMap:
    pairs = sorted({(e, f) for e, f, _ in g.adjacent_pairs})
    return LineGraphMap(g, Graph(g.m, tuple(pairs)))


def is_triangle_free(g: Graph) -> bool:
    bits = g.adjacency_bits
    return all(not (bits[u] & bits[v]) for u, v in g.edges)


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.edges:
        common = g.adjacency[u] & g.adjacency[v]
        out.extend((u, v, w) for w in sorted(common) if w > v)
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


# -- small-graph enumeration ----------------------------------------------------

def all_labelled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def canonical_form(g: Graph) -> tuple[int, tuple[Edge, ...]]:
    """Brute-force canonical form (lexicographically least relabelled edge list)."""
    if g.n > 7:
        raise BudgetExceeded("canonical_form is brute force; n <= 7 only")
    best = None
    for perm in itertools.permutations(range(g.n)):
        es = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges))
        if best is None or es < best:
            best = es
    return g.n, best or ()


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices (n <= 5)."""
    if n > 5:
        raise BudgetExceeded("nonisomorphic_graphs enumerates labelled graphs; n <= 5 only")
    reps: dict[tuple, Graph] = {}
    for g in all_labelled_graphs(n):
        reps.setdefault(canonical_form(g), g)
    return [Graph(n, form[1]) for form in sorted(reps)]


# -- colouring ------------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    graph: Graph
    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if len(self.colors) != self.graph.n:
            raise GraphError("coloring length does not match vertex count")
        if any(not 0 <= c < self.k for c in self.colors):
            raise GraphError("color outside [0, k)")
        if len(set(self.colors)) != self.k:
            raise GraphError("k is not tight: some color is unused")

    def is_proper(self) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in self.graph.edges)


def _relabel_by_first_use(colors: Sequence[int]) -> tuple[tuple[int, ...], int]:
    remap: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in remap:
            remap[c] = len(remap)
        out.append(remap[c])
    return tuple(out), len(remap)


def greedy_coloring(g: Graph) -> Coloring:
    """DSATUR: colour the most saturated vertex next, ties by lowest index."""
    colors = [-1] * g.n
    seen: list[set[int]] = [set() for _ in range(g.n)]
    for _ in range(g.n):
        v = max((u for u in range(g.n) if colors[u] < 0), key=lambda u: (len(seen[u]), -u))
        c = 0
        while c in seen[v]:
            c += 1
        colors[v] = c
        for w in g.adjacency[v]:
            seen[w].add(c)
    relabelled, k = _relabel_by_first_use(colors)
    return Coloring(g, relabelled, k)


def max_clique_size(g: Graph) -> int:
    bits = g.adjacency_bits
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        if size + bin(cand).count("1") <= best:
            return
        while cand:
            if size + bin(cand).count("1") <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(size + 1, cand & bits[v])

    expand(0, (1 << g.n) - 1)
    return best


def chromatic_number_exact(g: Graph, vertex_budget: int = 16) -> tuple[int, Coloring]:
    """Exact chromatic number by DSATUR branch and bound.

    The clique number seeds the lower bound and greedy DSATUR the upper bound.
    Raises :class:`BudgetExceeded` above ``vertex_budget`` vertices; callers
    fall back to :func:`greedy_coloring`.
    """
    if g.n > vertex_budget:
        raise BudgetExceeded(f"graph has {g.n} vertices; exact solver budget is {vertex_budget}")
    if g.n == 0:
        return 0, Coloring(g, (), 0)
    greedy = greedy_coloring(g)
    lower = max_clique_size(g)
    best_k = greedy.k
    best = list(greedy.colors)
    if lower == best_k:
        return best_k, greedy

    n = g.n
    adj = g.adjacency
    colors = [-1] * n
    # nbr_count[v][c]: neighbours of v currently coloured c
    nbr_count = [[0] * n for _ in range(n)]
    sat = [0] * n
    degree = [len(adj[v]) for v in range(n)]

    def pick() -> int:
        chosen, key = -1, None
        for v in range(n):
            if colors[v] < 0:
                kv = (sat[v], degree[v], -v)
                if key is None or kv > key:
                    chosen, key = v, kv
        return chosen

    def assign(v: int, c: int, sign: int) -> None:
        for w in adj[v]:
            row = nbr_count[w]
            if sign > 0:
                if row[c] == 0:
                    sat[w] += 1
                row[c] += 1
            else:
                row[c] -= 1
                if row[c] == 0:
                    sat[w] -= 1

    def search(colored: int, used: int) -> bool:
        nonlocal best_k, best
        if colored == n:
            best_k, best = used, colors[:]
            return best_k == lower
        v = pick()
        for c in range(used + 1):
            if max(used, c + 1) >= best_k:
                break
            if nbr_count[v][c]:
                continue
            colors[v] = c
            assign(v, c, +1)
            done = search(colored + 1, max(used, c + 1))
            assign(v, c, -1)
            colors[v] = -1
            if done:
                return True
        return False

    search(0, 0)
    relabelled, k = _relabel_by_first_use(best)
    return k, Coloring(g, relabelled, k)
