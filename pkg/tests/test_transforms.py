import random

import pytest
from hypothesis import given, settings

from elbowcover.errors import GraphError, VerificationError
from elbowcover.graph import (
    build_graph,
    chromatic_number_exact,
    complete_graph,
    cycle_graph,
    greedy_coloring,
    line_graph,
    mycielski_iterate,
    path_graph,
    random_graph,
    star_graph,
)
from elbowcover.experiments import exact_chordal_cover, random_chordal_cover, random_equivalence_cover
from elbowcover.orders import MIXING, build_family, in_elbow_orders
from elbowcover.orientations import (
    ELBOW,
    IN_ELBOW,
    Orientation,
    OrientationFamily,
    elbow_kind,
    exact_elb,
    orient_from_coloring,
    verify_orientation_cover,
)
from elbowcover.recognition import Cover, cover_verify, is_equivalence_graph
from elbowcover.transforms import (
    chordal_cover_to_elbow,
    classify_clique,
    covering_chain,
    equivalence_cover_to_elbow,
    equivalence_cover_to_inelbow,
    goodness_failures,
    greedy_star_cover,
    inelbow_to_equivalence_cover,
    orient_chordal_member,
)

from strategies import graphs, triangle_free_graphs

PAW = build_graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


def inelbow_cover(g):
    coloring = greedy_coloring(g)
    return orient_from_coloring(g, coloring, in_elbow_orders(coloring.k))


class TestInelbowToEquivalence:
    def test_p3(self):
        lg = line_graph(path_graph(3))
        fam = OrientationFamily(lg.base, (Orientation(lg.base, ((0, 1), (2, 1))),))
        cover = inelbow_to_equivalence_cover(lg, fam)
        assert cover.size == 1 and cover.members[0] == frozenset({0})

    def test_star(self):
        s = star_graph(3)
        lg = line_graph(s)
        fam = OrientationFamily(s, (Orientation.from_heads(s, [0, 0, 0]),))
        cover = inelbow_to_equivalence_cover(lg, fam)
        assert cover.size == 1 and len(cover.members[0]) == 3

    def test_k3(self):
        k3 = complete_graph(3)
        lg = line_graph(k3)
        cover = inelbow_to_equivalence_cover(lg, inelbow_cover(k3))
        assert cover.size == 3
        assert all(len(m) == 1 for m in cover.members)

    def test_rejects_non_cover(self):
        k3 = complete_graph(3)
        with pytest.raises(VerificationError):
            inelbow_to_equivalence_cover(line_graph(k3), OrientationFamily(k3, (Orientation.default(k3),)))


class TestEquivalenceToOrientations:
    def k3_cover(self):
        lg = line_graph(complete_graph(3))
        return lg, Cover(lg.line, (frozenset(range(3)),), "equivalence")

    def test_triangle_clique_inelbow(self):
        lg, cover = self.k3_cover()
        assert classify_clique(lg.base, [0, 1, 2]) == ("triangle", (0, 1, 2))
        fam = equivalence_cover_to_inelbow(lg, cover)
        assert fam.size == 3 and verify_orientation_cover(fam, IN_ELBOW)
        # each pair of triangle edges in-elbows in exactly one orientation
        for e, f in ((0, 1), (0, 2), (1, 2)):
            assert sum(elbow_kind(o, e, f) == "in-elbow" for o in fam.members) == 1

    def test_triangle_clique_elbow(self):
        lg, cover = self.k3_cover()
        fam = equivalence_cover_to_elbow(lg, cover)
        assert fam.size == 2 == exact_elb(complete_graph(3))
        assert verify_orientation_cover(fam, ELBOW)

    def test_star_clique(self):
        s = star_graph(3)
        lg = line_graph(s)
        cover = Cover(lg.line, (frozenset(range(3)),), "equivalence")
        assert classify_clique(s, [0, 1, 2]) == ("star", (0,))
        inelbow = equivalence_cover_to_inelbow(lg, cover)
        assert inelbow.size == 3 and len(set(inelbow.members)) == 1
        elbow = equivalence_cover_to_elbow(lg, cover)
        assert elbow.size == 2 and len(set(elbow.members)) == 1

    def test_paw_mixed(self):
        lg = line_graph(PAW)
        cover = random_equivalence_cover(lg, random.Random(0))
        assert verify_orientation_cover(equivalence_cover_to_elbow(lg, cover), ELBOW)
        assert equivalence_cover_to_elbow(lg, cover).size == 2 * cover.size

    def test_round_trip_p3(self):
        lg = line_graph(path_graph(3))
        cover = inelbow_to_equivalence_cover(lg, inelbow_cover(path_graph(3)))
        fam = equivalence_cover_to_inelbow(lg, cover)
        assert fam.size == 3 * cover.size and verify_orientation_cover(fam, IN_ELBOW)

    def test_rejects_non_equivalence(self):
        lg = line_graph(path_graph(4))
        with pytest.raises(VerificationError):
            equivalence_cover_to_elbow(lg, Cover(lg.line, (frozenset({0, 1}),), "equivalence"))

    def test_bad_clique(self):
        with pytest.raises(VerificationError):
            classify_clique(path_graph(4), [0, 2])

    @settings(max_examples=40)
    @given(graphs(max_n=8))
    def test_round_trips(self, g):
        lg = line_graph(g)
        start = inelbow_cover(g)
        eq = inelbow_to_equivalence_cover(lg, start)
        assert eq.size == start.size
        back = equivalence_cover_to_inelbow(lg, eq)
        assert back.size == 3 * eq.size and verify_orientation_cover(back, IN_ELBOW)
        rand = random_equivalence_cover(lg, random.Random(g.m))
        elbow = equivalence_cover_to_elbow(lg, rand)
        assert elbow.size == 2 * rand.size and verify_orientation_cover(elbow, ELBOW)


class TestChordalToElbow:
    def test_c5_path_plus_edge(self):
        lg = line_graph(cycle_graph(5))
        line = lg.line
        # line graph of C5 is a 5-cycle on the base edges; take a Hamiltonian path of it
        path = [line.index_of(*e) for e in line.edges][:4]
        cover = Cover(line, (frozenset(path), frozenset(set(range(5)) - set(path))), "chordal")
        assert cover_verify(cover).passed
        fam = chordal_cover_to_elbow(lg, cover)
        assert fam.size == 2 and verify_orientation_cover(fam, ELBOW)
        assert goodness_failures(lg, cover, fam) == []

    def test_single_edge_member(self):
        lg = line_graph(path_graph(3))
        o = orient_chordal_member(lg, frozenset({0}))
        assert elbow_kind(o, 0, 1) is not None

    def test_p3(self):
        lg = line_graph(path_graph(3))
        fam = chordal_cover_to_elbow(lg, Cover(lg.line, (frozenset({0}),), "chordal"))
        assert fam.size == 1 == exact_elb(path_graph(3))

    def test_default_rule_when_isolated(self):
        lg = line_graph(path_graph(3))
        assert orient_chordal_member(lg, frozenset()) == Orientation.default(path_graph(3))

    def test_rejects_triangle(self):
        lg = line_graph(complete_graph(3))
        with pytest.raises(GraphError):
            chordal_cover_to_elbow(lg, Cover(lg.line, (frozenset(range(3)),), "chordal"))

    def test_rejects_non_chordal_member(self):
        lg = line_graph(cycle_graph(5))
        with pytest.raises(VerificationError):
            chordal_cover_to_elbow(lg, Cover(lg.line, (frozenset(range(5)),), "chordal"))

    @settings(max_examples=50)
    @given(triangle_free_graphs(max_n=10))
    def test_equivalence_pipeline(self, g):
        lg = line_graph(g)
        cover = inelbow_to_equivalence_cover(lg, inelbow_cover(g)).with_class("chordal")
        fam = chordal_cover_to_elbow(lg, cover)
        assert fam.size == cover.size
        assert verify_orientation_cover(fam, ELBOW)
        assert goodness_failures(lg, cover, fam) == []

    @settings(max_examples=50)
    @given(triangle_free_graphs(max_n=9))
    def test_greedy_chordal_covers(self, g):
        lg = line_graph(g)
        cover = random_chordal_cover(lg.line, random.Random(g.m))
        fam = chordal_cover_to_elbow(lg, cover)
        assert fam.size == cover.size and verify_orientation_cover(fam, ELBOW)
        assert goodness_failures(lg, cover, fam) == []

    @settings(max_examples=40)
    @given(triangle_free_graphs(max_n=7, max_m=8))
    def test_exact_elb_below_cover_sizes(self, g):
        lg = line_graph(g)
        eq = inelbow_to_equivalence_cover(lg, inelbow_cover(g))
        assert all(is_equivalence_graph(eq.member_graph(i)) for i in range(eq.size))
        elb = exact_elb(g)
        assert elb <= (eq.size if g.adjacent_pairs else 0)
        if lg.line.m <= 12:
            assert elb <= exact_chordal_cover(lg.line).size


class TestChain:
    def test_c5(self):
        r = covering_chain(cycle_graph(5))
        assert r["lower_bound"] == 2 and r["best_cover"] >= 2 and r["violations"] == []
        assert r["exact_elb"] == 2

    def test_p3(self):
        r = covering_chain(path_graph(3))
        assert r["lower_bound"] == 1 and r["best_cover"] == 1 and not r["violations"]

    def test_grotzsch(self):
        r = covering_chain(mycielski_iterate(4))
        assert r["chi"] == 4 and r["lower_bound"] == 2 and r["violations"] == []

    def test_needs_triangle_free(self):
        with pytest.raises(GraphError):
            covering_chain(complete_graph(3))

    def test_random(self):
        for seed in range(30):
            g = random_graph(4 + seed % 7, 0.5, seed, triangle_free=True)
            r = covering_chain(g)
            assert r["violations"] == [], (seed, r)
            if g.adjacent_pairs:
                chi = chromatic_number_exact(g)[0]
                assert r["eq_cover_elbow_route"] == 2 * build_family(chi, MIXING).size


@given(graphs(max_n=9))
def test_greedy_star_cover(g):
    lg = line_graph(g)
    cover = greedy_star_cover(lg)
    assert cover_verify(cover).passed
    assert greedy_star_cover(lg) == cover
    if g.adjacent_pairs:
        assert cover.size >= 1
