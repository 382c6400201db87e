"""Moving between orientation covers of G and covers of its line graph.

Every transform re-verifies its input on entry and its output before
returning; they produce certificates, so bad input is rejected rather than
passed along.
"""
from __future__ import annotations

from typing import Sequence

from .errors import GraphError, VerificationError
from .graph import Graph, LineGraphMap, is_triangle_free
from .orientations import (
    ELBOW,
    IN_ELBOW,
    Orientation,
    OrientationFamily,
    elbow_kind,
    verify_orientation_cover,
)
from .recognition import Cover, cover_verify, find_peo


def _check_base(lg: LineGraphMap, fam: OrientationFamily) -> None:
    if fam.graph != lg.base:
        raise GraphError("orientation family does not orient the base graph")


def _require_cover(lg: LineGraphMap, c: Cover, cls: str) -> None:
    if c.target != lg.line:
        raise GraphError("cover target is not the line graph")
    report = cover_verify(c.with_class(cls))
    if not report.passed:
        raise VerificationError(f"input is not a valid {cls} cover: {report.to_dict()}")


def inelbow_to_equivalence_cover(lg: LineGraphMap, fam: OrientationFamily) -> Cover:
    """One equivalence graph per orientation: edges pointing at the same vertex form a clique."""
    _check_base(lg, fam)
    if not verify_orientation_cover(fam, IN_ELBOW):
        raise VerificationError("family is not an in-elbow cover")
    line = lg.line
    members = []
    for o in fam.members:
        by_head: dict[int, list[int]] = {}
        for e in range(lg.base.m):
            by_head.setdefault(o.head(e), []).append(e)
        ids = set()
        for group in by_head.values():
            for i, e in enumerate(group):
                for f in group[i + 1:]:
                    ids.add(line.index_of(e, f))
        members.append(frozenset(ids))
    cover = Cover(line, tuple(members), "equivalence")
    if not cover_verify(cover).passed:
        raise VerificationError("constructed equivalence cover failed verification")
    return cover


def _cliques(line: Graph, member: frozenset[int]) -> list[list[int]]:
    """Components with at least two vertices of a member subgraph."""
    h = line.subgraph_edges(member)
    seen: set[int] = set()
    out = []
    for s in range(h.n):
        if s in seen or not h.adjacency[s]:
            continue
        comp = {s}
        stack = [s]
        while stack:
            for w in h.adjacency[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(sorted(comp))
    return out


def classify_clique(base: Graph, clique: Sequence[int]) -> tuple[str, tuple[int, ...]]:
    """``("star", (centre,))`` or ``("triangle", (a, b, c))`` for a clique of the line graph."""
    endpoint_sets = [set(base.edges[e]) for e in clique]
    common = set.intersection(*endpoint_sets)
    if common:
        return "star", (min(common),)
    corners = set().union(*endpoint_sets)
    if len(clique) == 3 and len(corners) == 3:
        return "triangle", tuple(sorted(corners))
    raise VerificationError(f"clique {list(clique)} is neither a star nor a triangle; not a line graph clique")


def _triangle_heads(base: Graph, tri: tuple[int, int, int], sink: int) -> dict[int, int]:
    """Both edges at ``sink`` point into it; the opposite edge goes low to high."""
    a, b, c = tri
    heads = {}
    for u, v in ((a, b), (a, c), (b, c)):
        e = base.index_of(u, v)
        heads[e] = sink if sink in (u, v) else v
    return heads


def _transitive_heads(base: Graph, ordered: tuple[int, int, int]) -> dict[int, int]:
    """Acyclic triangle with ``ordered[0]`` the source and ``ordered[2]`` the sink."""
    s, m, t = ordered
    return {
        base.index_of(s, m): m,
        base.index_of(s, t): t,
        base.index_of(m, t): t,
    }


def _expand_equivalence(lg: LineGraphMap, c: Cover, copies: int, triangle_gadget) -> OrientationFamily:
    base = lg.base
    members: list[Orientation] = []
    for mi in range(c.size):
        heads = [[v for _, v in base.edges] for _ in range(copies)]
        for clique in _cliques(lg.line, c.members[mi]):
            shape, verts = classify_clique(base, clique)
            if shape == "star":
                for h in heads:
                    for e in clique:
                        h[e] = verts[0]
            else:
                for t, h in enumerate(heads):
                    for e, head in triangle_gadget(base, verts, t).items():
                        h[e] = head
        members += [Orientation.from_heads(base, h) for h in heads]
    return OrientationFamily(base, tuple(members))


def equivalence_cover_to_inelbow(lg: LineGraphMap, c: Cover) -> OrientationFamily:
    """Three orientations per equivalence graph.

    Star cliques point into their centre in all three.  For a triangle
    ``a < b < c`` orientation ``t`` makes corner ``t`` a sink.
    """
    _require_cover(lg, c, "equivalence")

    def gadget(base: Graph, tri: tuple[int, int, int], t: int) -> dict[int, int]:
        return _triangle_heads(base, tri, tri[t])

    fam = _expand_equivalence(lg, c, 3, gadget)
    if not verify_orientation_cover(fam, IN_ELBOW):
        raise VerificationError("constructed in-elbow family failed verification")
    return fam.with_kind(IN_ELBOW)


def equivalence_cover_to_elbow(lg: LineGraphMap, c: Cover) -> OrientationFamily:
    """Two orientations per equivalence graph.

    A triangle ``a < b < c`` is oriented ``a -> b -> c, a -> c`` (elbows at
    ``a`` and ``c``) and then rotated to ``b -> c -> a, b -> a`` (elbow at ``b``).
    """
    _require_cover(lg, c, "equivalence")

    def gadget(base: Graph, tri: tuple[int, int, int], t: int) -> dict[int, int]:
        a, b, cc = tri
        return _transitive_heads(base, (a, b, cc) if t == 0 else (b, cc, a))

    fam = _expand_equivalence(lg, c, 2, gadget)
    if not verify_orientation_cover(fam, ELBOW):
        raise VerificationError("constructed elbow family failed verification")
    return fam.with_kind(ELBOW)


def orient_chordal_member(lg: LineGraphMap, member: frozenset[int]) -> Orientation:
    """Orient the base graph from one chordal subgraph of its line graph.

    Walk a perfect elimination order backwards.  Each edge copies the
    in/out status, at their shared vertex, of its neighbour in the subgraph
    that was oriented most recently; edges with no oriented neighbour go
    from the lower to the higher endpoint.
    """
    base, line = lg.base, lg.line
    h = line.subgraph_edges(member)
    peo = find_peo(h)
    if peo is None:
        raise VerificationError("member is not chordal: no perfect elimination order")
    rank = {e: i for i, e in enumerate(peo.order)}
    heads = [v for _, v in base.edges]
    for i in range(len(peo.order) - 1, -1, -1):
        e = peo.order[i]
        later = [f for f in h.adjacency[e] if rank[f] > i]
        if not later:
            continue
        f = min(later, key=rank.__getitem__)
        x = lg.shared_vertex(e, f)
        u, v = base.edges[e]
        other = v if x == u else u
        heads[e] = x if heads[f] == x else other
    return Orientation.from_heads(base, heads)


def goodness_failures(lg: LineGraphMap, c: Cover, fam: OrientationFamily) -> list[tuple[int, int, int]]:
    """``(member, e, f)`` for every pair adjacent in a member that does not elbow in its orientation."""
    bad = []
    for mi, member in enumerate(c.members):
        o = fam.members[mi]
        for i in sorted(member):
            e, f = lg.line.edges[i]
            if elbow_kind(o, e, f) is None:
                bad.append((mi, e, f))
    return bad


def chordal_cover_to_elbow(lg: LineGraphMap, c: Cover) -> OrientationFamily:
    """An elbow cover of a triangle-free base with one orientation per chordal member.

    Beyond covering every adjacent pair, each orientation elbows every pair
    adjacent in its own member; that stronger property is checked too.
    """
    if not is_triangle_free(lg.base):
        raise GraphError("base graph must be triangle-free")
    _require_cover(lg, c, "chordal")
    fam = OrientationFamily(lg.base, tuple(orient_chordal_member(lg, m) for m in c.members))
    bad = goodness_failures(lg, c, fam)
    if bad:
        raise VerificationError(f"member pairs left without an elbow: {bad[:5]}")
    if not verify_orientation_cover(fam, ELBOW):
        raise VerificationError("constructed family is not an elbow cover")
    return fam.with_kind(ELBOW)


def greedy_star_cover(lg: LineGraphMap) -> Cover:
    """Equivalence cover of L(G) built from star cliques only.

    Each member repeatedly hands every still-unclaimed edge at one vertex to
    that vertex, picking the vertex that covers the most new line edges
    (lowest index on ties), until no vertex adds anything.
    """
    base, line = lg.base, lg.line
    uncovered = set(range(line.m))
    members = []
    while uncovered:
        claimed: set[int] = set()
        ids: set[int] = set()
        while True:
            best, best_new = -1, set()
            for v in range(base.n):
                free = [e for e in base.incident_edges[v] if e not in claimed]
                new = {line.index_of(e, f) for i, e in enumerate(free) for f in free[i + 1:]} & uncovered
                if len(new) > len(best_new):
                    best, best_new = v, new
            if best < 0:
                break
            free = [e for e in base.incident_edges[best] if e not in claimed]
            claimed.update(free)
            ids |= {line.index_of(e, f) for i, e in enumerate(free) for f in free[i + 1:]}
            uncovered -= best_new
        members.append(frozenset(ids))
    cover = Cover(line, tuple(members), "equivalence")
    if not cover_verify(cover).passed:
        raise VerificationError("greedy star cover failed verification")
    return cover


def covering_chain(g: Graph, vertex_budget: int = 16, edge_budget: int = 12, k_max: int = 4) -> dict:
    """Bounds on the covering numbers of L(g) for a triangle-free ``g``.

    Lower bound: ceil(lg lg chi) + 1.  Upper bounds come from verified
    equivalence covers built three ways (3-suitable colour orders, a
    3-mixing elbow cover doubled by reversal, greedy star cliques); the
    smallest one is also fed
    through :func:`chordal_cover_to_elbow`.  ``violations`` lists every
    implied inequality that fails and should always be empty.
    """
    from .graph import chromatic_number_exact, line_graph
    from .orders import MIXING, build_family, in_elbow_orders, lglg_bound
    from .orientations import elbow_to_inelbow, exact_elb, orient_from_coloring

    if not is_triangle_free(g):
        raise GraphError("covering_chain needs a triangle-free graph")
    chi, coloring = chromatic_number_exact(g, vertex_budget)
    lg = line_graph(g)
    has_pairs = bool(g.adjacent_pairs)
    report: dict = {"n": g.n, "m": g.m, "chi": chi, "adjacent_pairs": len(g.adjacent_pairs)}
    if not has_pairs:
        report.update(lower_bound=0, formula=lglg_bound(chi) if chi >= 2 else None,
                      eq_cover_suitable=0, eq_cover_elbow_route=0, eq_cover_greedy=0,
                      best_cover=0, chordal_to_elbow_size=0,
                      exact_elb=0, violations=[])
        return report

    lower = lglg_bound(chi)
    inelbow = orient_from_coloring(g, coloring, in_elbow_orders(chi))
    eq_suitable = inelbow_to_equivalence_cover(lg, inelbow)
    elbow = orient_from_coloring(g, coloring, build_family(chi, MIXING))
    if not verify_orientation_cover(elbow, ELBOW):
        raise VerificationError("3-mixing colour orientations are not an elbow cover")
    eq_elbow = inelbow_to_equivalence_cover(lg, elbow_to_inelbow(elbow))
    eq_greedy = greedy_star_cover(lg)
    best = min((eq_suitable, eq_elbow, eq_greedy), key=lambda c: c.size)
    thm2 = chordal_cover_to_elbow(lg, best.with_class("chordal"))

    exact = None
    if g.m <= edge_budget:
        exact = exact_elb(g, k_max=k_max, edge_budget=edge_budget)

    violations = []
    if lower > best.size:
        violations.append(f"lower bound {lower} exceeds verified cover size {best.size}")
    if thm2.size != best.size:
        violations.append("chordal-to-elbow transform changed the family size")
    if eq_elbow.size > 2 * lower:
        violations.append(f"elbow-route cover {eq_elbow.size} exceeds 2(ceil(lglg chi)+1) = {2 * lower}")
    if exact is not None:
        if exact != lower:
            violations.append(f"exact elb {exact} differs from ceil(lglg chi)+1 = {lower}")
        if exact > best.size:
            violations.append(f"exact elb {exact} exceeds verified chordal cover size {best.size}")
        if exact > 2 * inelbow.size:
            violations.append("exact elb exceeds twice the in-elbow cover size")

    report.update(
        lower_bound=lower,
        eq_cover_suitable=eq_suitable.size,
        eq_cover_elbow_route=eq_elbow.size,
        eq_cover_greedy=eq_greedy.size,
        best_cover=best.size,
        chordal_to_elbow_size=thm2.size,
        exact_elb=exact,
        violations=violations,
    )
    return report
