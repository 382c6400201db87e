"""Chordal, interval and equivalence graph recognition, plus cover checking."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetExceeded, GraphError
from .graph import Edge, Graph

COVER_CLASSES = ("equivalence", "interval", "chordal", "elbow-orientation-derived", "unrestricted")


@dataclass(frozen=True)
class PerfectEliminationOrder:
    graph: Graph
    order: tuple[int, ...]


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visiting order, ties broken by lowest index."""
    weight = [0] * g.n
    done = [False] * g.n
    visit = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        visit.append(v)
        for w in g.adjacency[v]:
            if not done[w]:
                weight[w] += 1
    return visit


def is_perfect_elimination_order(g: Graph, order: Sequence[int]) -> bool:
    """Check directly that each vertex is simplicial in the suffix it starts."""
    if sorted(order) != list(range(g.n)):
        return False
    rank = {v: i for i, v in enumerate(order)}
    adj = g.adjacency
    for v in order:
        later = [w for w in adj[v] if rank[w] > rank[v]]
        for a, b in itertools.combinations(later, 2):
            if b not in adj[a]:
                return False
    return True


def find_peo(g: Graph) -> PerfectEliminationOrder | None:
    order = tuple(reversed(mcs_order(g)))
    if not is_perfect_elimination_order(g, order):
        return None
    return PerfectEliminationOrder(g, order)


def is_chordal(g: Graph) -> bool:
    return find_peo(g) is not None


def is_chordal_oracle(g: Graph) -> bool:
    """Exhaustive search for an induced cycle on four or more vertices."""
    if g.n > 8:
        raise BudgetExceeded("is_chordal_oracle handles at most 8 vertices")
    bits = g.adjacency_bits
    for size in range(4, g.n + 1):
        for subset in itertools.combinations(range(g.n), size):
            mask = sum(1 << v for v in subset)
            if all(bin(bits[v] & mask).count("1") == 2 for v in subset) and _connected_within(bits, subset[0], mask):
                return False
    return True


def _connected_within(bits: Sequence[int], start: int, mask: int) -> bool:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= bits[low.bit_length() - 1] & mask
            frontier ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == mask


def _components_avoiding(g: Graph, z: int) -> list[int]:
    """Component label of every vertex in G - N[z]; -1 for removed vertices."""
    label = [-1] * g.n
    blocked = set(g.adjacency[z]) | {z}
    nxt = 0
    for s in range(g.n):
        if s in blocked or label[s] >= 0:
            continue
        label[s] = nxt
        stack = [s]
        while stack:
            for w in g.adjacency[stack.pop()]:
                if w not in blocked and label[w] < 0:
                    label[w] = nxt
                    stack.append(w)
        nxt += 1
    return label


def find_asteroidal_triple(g: Graph) -> tuple[int, int, int] | None:
    comp = [_components_avoiding(g, z) for z in range(g.n)]
    for x, y, z in itertools.combinations(range(g.n), 3):
        if (comp[z][x] >= 0 and comp[z][x] == comp[z][y]
                and comp[x][y] >= 0 and comp[x][y] == comp[x][z]
                and comp[y][x] >= 0 and comp[y][x] == comp[y][z]):
            return x, y, z
    return None


def is_interval(g: Graph) -> bool:
    """Chordal and asteroidal-triple free (Lekkerkerker-Boland)."""
    return is_chordal(g) and find_asteroidal_triple(g) is None


def is_interval_oracle(g: Graph) -> bool:
    """Search endpoint sequences for an interval model directly.

    Intervals are opened and closed one event at a time.  Opening ``v`` is
    allowed only if every open interval is a neighbour of ``v``; closing
    ``v`` only once all its neighbours have been opened.  The search state is
    the pair (opened, closed), memoised.
    """
    if g.n > 7:
        raise BudgetExceeded("is_interval_oracle handles at most 7 vertices")
    bits = g.adjacency_bits
    full = (1 << g.n) - 1

    @lru_cache(maxsize=None)
    def search(opened: int, closed: int) -> bool:
        if closed == full:
            return True
        live = opened & ~closed
        for v in range(g.n):
            b = 1 << v
            if not opened & b:
                if live & ~bits[v] == 0 and search(opened | b, closed):
                    return True
            elif not closed & b:
                if bits[v] & ~opened == 0 and search(opened, closed | b):
                    return True
        return False

    return search(0, 0)


def is_equivalence_graph(g: Graph) -> bool:
    """Disjoint union of cliques: adjacent vertices have equal closed neighbourhoods."""
    bits = g.adjacency_bits
    return all(bits[u] | 1 << u == bits[v] | 1 << v for u, v in g.edges)


CLASS_CHECKS = {
    "equivalence": is_equivalence_graph,
    "interval": is_interval,
    "chordal": is_chordal,
}


@dataclass(frozen=True)
class Cover:
    """Spanning subgraphs of ``target``, each given as a set of target edge indices."""

    target: Graph
    members: tuple[frozenset[int], ...]
    claimed_class: str = "unrestricted"

    def __post_init__(self) -> None:
        if self.claimed_class not in COVER_CLASSES:
            raise GraphError(f"unknown cover class {self.claimed_class!r}")
        for member in self.members:
            for i in member:
                if not 0 <= i < self.target.m:
                    raise GraphError(f"member edge index {i} outside target edge list")

    @classmethod
    def from_edge_lists(cls, target: Graph, members: Iterable[Iterable[Edge]],
                        claimed_class: str = "unrestricted") -> "Cover":
        return cls(target, tuple(frozenset(target.index_of(u, v) for u, v in m) for m in members),
                   claimed_class)

    @property
    def size(self) -> int:
        return len(self.members)

    def member_graph(self, i: int) -> Graph:
        return self.target.subgraph_edges(self.members[i])

    def with_class(self, claimed_class: str) -> "Cover":
        return Cover(self.target, self.members, claimed_class)


@dataclass
class CoverReport:
    size: int
    union_ok: bool
    missing_edges: list[Edge] = field(default_factory=list)
    failed_members: list[int] = field(default_factory=list)
    claimed_class: str = "unrestricted"

    @property
    def passed(self) -> bool:
        return self.union_ok and not self.failed_members

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "size": self.size,
            "class": self.claimed_class,
            "union_ok": self.union_ok,
            "missing_edges": [list(e) for e in self.missing_edges],
            "failed_members": self.failed_members,
        }


def cover_verify(c: Cover) -> CoverReport:
    covered: set[int] = set().union(*c.members) if c.members else set()
    missing = [c.target.edges[i] for i in range(c.target.m) if i not in covered]
    check = CLASS_CHECKS.get(c.claimed_class)
    failed = []
    if check is not None:
        failed = [i for i in range(c.size) if not check(c.member_graph(i))]
    return CoverReport(c.size, not missing, missing, failed, c.claimed_class)
