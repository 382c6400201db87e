"""Orientations, elbows, and elbow / in-elbow covers.

Two edges meeting at ``x`` form an *in-elbow* when both point into ``x``
and an *out-elbow* when both point away from it.  A family of orientations
is an elbow cover (in-elbow cover) when every adjacent pair of edges forms
an elbow (in-elbow) in at least one member.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .errors import BudgetExceeded, GraphError, VerificationError
from .graph import Coloring, Graph
from .orders import OrderFamily

ELBOW = "elbow"
IN_ELBOW = "in-elbow"
KINDS = (ELBOW, IN_ELBOW)


@dataclass(frozen=True)
class Orientation:
    graph: Graph
    dirs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if len(self.dirs) != self.graph.m:
            raise GraphError("an orientation needs exactly one direction per edge")
        for (t, h), e in zip(self.dirs, self.graph.edges):
            if (min(t, h), max(t, h)) != e:
                raise GraphError(f"direction {(t, h)} does not match edge {e}")

    @classmethod
    def from_heads(cls, g: Graph, heads: Sequence[int]) -> "Orientation":
        dirs = []
        for (u, v), h in zip(g.edges, heads):
            if h == v:
                dirs.append((u, v))
            elif h == u:
                dirs.append((v, u))
            else:
                raise GraphError(f"head {h} is not an endpoint of {(u, v)}")
        return cls(g, tuple(dirs))

    @classmethod
    def from_code(cls, g: Graph, code: int) -> "Orientation":
        """Bit ``e`` of ``code`` set means edge ``e`` points to its lower endpoint."""
        return cls(g, tuple((v, u) if code >> i & 1 else (u, v) for i, (u, v) in enumerate(g.edges)))

    @classmethod
    def default(cls, g: Graph) -> "Orientation":
        return cls(g, g.edges)

    def head(self, e: int) -> int:
        return self.dirs[e][1]

    def reversed(self) -> "Orientation":
        return Orientation(self.graph, tuple((h, t) for t, h in self.dirs))

    @property
    def code(self) -> int:
        return sum(1 << i for i, ((t, h), (u, v)) in enumerate(zip(self.dirs, self.graph.edges)) if h == u)


@dataclass(frozen=True)
class OrientationFamily:
    graph: Graph
    members: tuple[Orientation, ...]
    claimed_kind: str | None = None

    def __post_init__(self) -> None:
        if self.claimed_kind not in (None,) + KINDS:
            raise GraphError(f"unknown cover kind {self.claimed_kind!r}")
        for o in self.members:
            if o.graph != self.graph:
                raise GraphError("all members must orient the same graph")

    @property
    def size(self) -> int:
        return len(self.members)

    def with_kind(self, kind: str | None) -> "OrientationFamily":
        return OrientationFamily(self.graph, self.members, kind)


def elbow_kind(o: Orientation, e: int, f: int) -> str | None:
    """``"in-elbow"``, ``"out-elbow"`` or None for edges ``e`` and ``f`` of ``o``."""
    g = o.graph
    if e == f:
        raise GraphError("an elbow needs two distinct edges")
    common = set(g.edges[e]) & set(g.edges[f])
    if len(common) != 1:
        raise GraphError(f"edges {e} and {f} are not adjacent")
    x = common.pop()
    ie, jf = o.head(e) == x, o.head(f) == x
    if ie and jf:
        return "in-elbow"
    if not ie and not jf:
        return "out-elbow"
    return None


def _pair_ok(o: Orientation, e: int, f: int, x: int, kind: str) -> bool:
    ie = o.dirs[e][1] == x
    jf = o.dirs[f][1] == x
    return (ie and jf) if kind == IN_ELBOW else ie == jf


def uncovered_pairs(fam: OrientationFamily, kind: str) -> list[tuple[int, int, int]]:
    """Adjacent pairs ``(e, f, x)`` that no member serves."""
    if kind not in KINDS:
        raise ValueError(f"unknown cover kind {kind!r}")
    return [
        (e, f, x) for e, f, x in fam.graph.adjacent_pairs
        if not any(_pair_ok(o, e, f, x, kind) for o in fam.members)
    ]


def verify_orientation_cover(fam: OrientationFamily, kind: str) -> bool:
    if kind not in KINDS:
        raise ValueError(f"unknown cover kind {kind!r}")
    members = fam.members
    return all(any(_pair_ok(o, e, f, x, kind) for o in members) for e, f, x in fam.graph.adjacent_pairs)


def certify(fam: OrientationFamily) -> OrientationFamily:
    """Attach the strongest kind the family verifies as."""
    if verify_orientation_cover(fam, IN_ELBOW):
        return fam.with_kind(IN_ELBOW)
    if verify_orientation_cover(fam, ELBOW):
        return fam.with_kind(ELBOW)
    return fam.with_kind(None)


def orient_from_coloring(g: Graph, c: Coloring, f: OrderFamily) -> OrientationFamily:
    """One orientation per order: each edge points to the endpoint whose colour comes later."""
    if c.graph != g:
        raise GraphError("coloring belongs to a different graph")
    if not c.is_proper():
        raise GraphError("coloring is not proper")
    if f.universe_size < c.k:
        raise GraphError(f"order family covers {f.universe_size} colours, coloring uses {c.k}")
    members = []
    for order in f.orders:
        rank = {color: i for i, color in enumerate(order)}
        heads = [v if rank[c.colors[u]] < rank[c.colors[v]] else u for u, v in g.edges]
        members.append(Orientation.from_heads(g, heads))
    return certify(OrientationFamily(g, tuple(members)))


def _pair_spec(g: Graph) -> tuple[list[int], list[int], list[int], list[int]]:
    pe, pf, fe, ff = [], [], [], []
    for e, f, x in g.adjacent_pairs:
        pe.append(e)
        pf.append(f)
        # with bit clear the head is the higher endpoint
        fe.append(int(g.edges[e][1] == x))
        ff.append(int(g.edges[f][1] == x))
    return pe, pf, fe, ff


def _exact_cover_number(g: Graph, kind: str, k_max: int, edge_budget: int) -> int | None:
    if k_max > 4:
        raise BudgetExceeded("exact elbow solvers support k_max <= 4")
    npairs = len(g.adjacent_pairs)
    if npairs == 0:
        return 0
    if g.m > edge_budget:
        raise BudgetExceeded(f"graph has {g.m} edges; exact solver budget is {edge_budget}")
    pe, pf, fe, ff = _pair_spec(g)
    if kind == ELBOW:
        # reversing every edge swaps in- and out-elbows, so fix the last edge
        masks = kernels.orientation_masks(pe, pf, fe, ff, kernels.ELBOW, 0, 1 << (g.m - 1))
    else:
        masks = kernels.orientation_masks(pe, pf, fe, ff, kernels.IN_ELBOW, 0, 1 << g.m)
    k = kernels.min_cover(masks, (1 << npairs) - 1, k_max)
    return None if k < 0 else k


def exact_elb(g: Graph, k_max: int = 4, edge_budget: int = 12) -> int | None:
    """Minimum elbow cover size, or None when more than ``k_max`` orientations are needed.

    Graphs with no adjacent edge pairs return 0 (the empty family covers them).
    """
    return _exact_cover_number(g, ELBOW, k_max, edge_budget)


def exact_inelb(g: Graph, k_max: int = 4, edge_budget: int = 12) -> int | None:
    return _exact_cover_number(g, IN_ELBOW, k_max, edge_budget)


def elbow_to_inelbow(fam: OrientationFamily) -> OrientationFamily:
    """Each orientation followed by its reverse; out-elbows become in-elbows."""
    if not verify_orientation_cover(fam, ELBOW):
        raise VerificationError("input family is not an elbow cover")
    members: list[Orientation] = []
    for o in fam.members:
        members += [o, o.reversed()]
    out = OrientationFamily(fam.graph, tuple(members))
    if not verify_orientation_cover(out, IN_ELBOW):
        raise VerificationError("reverse doubling failed to give an in-elbow cover")
    return out.with_kind(IN_ELBOW)


def family_from_dirs(g: Graph, dir_lists: Iterable[Sequence[Sequence[int]]],
                     kind: str | None = None) -> OrientationFamily:
    members = tuple(Orientation(g, tuple((int(t), int(h)) for t, h in d)) for d in dir_lists)
    return OrientationFamily(g, members, kind)
