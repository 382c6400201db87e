import itertools
import random

import pytest
from hypothesis import given, settings

from elbowcover.errors import BudgetExceeded, GraphError
from elbowcover.experiments import (
    RunConfig,
    corollary3_check,
    exact_chordal_cover,
    kn_report,
    matching_graph,
    parse_graph_spec,
    random_chordal_cover,
    random_equivalence_cover,
    formula_graphs,
    theorem1_table,
    theorem5_trend,
    to_json,
    to_text,
)
from elbowcover.graph import complete_graph, cycle_graph, line_graph, mycielski_iterate, path_graph
from elbowcover.orders import SUITABLE, build_family
from elbowcover.recognition import cover_verify, is_chordal

from strategies import graphs

CFG = RunConfig("test", seed=3)


class TestRunConfig:
    def test_header(self):
        h = CFG.header()
        assert h["seed"] == 3 and h["budgets"] == {"vertices": 16, "edges": 12, "k_max": 4}
        assert h["version"]

    @pytest.mark.parametrize("field", ["vertex_budget", "edge_budget", "k_max"])
    def test_budgets_positive(self, field):
        with pytest.raises(ValueError):
            RunConfig("x", **{field: 0})


class TestGraphSpecs:
    @pytest.mark.parametrize("spec, n, m", [
        ("K5", 5, 10), ("C5", 5, 5), ("P3", 3, 2), ("S4", 5, 4), ("M4", 11, 20),
        ("grotzsch", 11, 20), ("matching:2", 4, 2), ("complete:3", 3, 3), ("mycielski:3", 5, 5),
    ])
    def test_named(self, spec, n, m):
        g = parse_graph_spec(spec)
        assert (g.n, g.m) == (n, m)

    def test_random(self):
        assert parse_graph_spec("random:10:0.3:7") == parse_graph_spec("random:10:0.3:7")
        assert parse_graph_spec("random-tf:10:0.9:1").m > 0

    @pytest.mark.parametrize("spec", ["random:10:0.3", "complete", "cycle:x", "blob:3"])
    def test_bad(self, spec):
        with pytest.raises(GraphError):
            parse_graph_spec(spec)

    def test_json_file(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text('{"n": 3, "edges": [[0, 1], [1, 2]]}')
        assert parse_graph_spec(str(path)) == path_graph(3)


class TestElbFormulaTable:
    def test_cliques(self):
        rows = theorem1_table([("K3", complete_graph(3)), ("K4", complete_graph(4)), ("K5", complete_graph(5))], CFG)["rows"]
        assert [r["formula"] for r in rows] == [2, 2, 3]
        assert [r["exact_elb"] for r in rows] == [2, 2, 3]
        assert all(r["status"] == "match" for r in rows)

    def test_p3(self):
        (row,) = theorem1_table([("P3", path_graph(3))], CFG)["rows"]
        assert (row["formula"], row["exact_elb"], row["status"]) == (1, 1, "match")

    def test_matching_flagged(self):
        report = theorem1_table([("matching:2", matching_graph(2))], CFG)
        (row,) = report["rows"]
        assert (row["formula"], row["exact_elb"], row["status"]) == (1, 0, "vacuous-pair convention")
        assert report["passed"]

    def test_budget_rows_skipped(self):
        report = theorem1_table([("K6", complete_graph(6))], CFG)
        assert report["rows"][0]["status"].startswith("skipped") and report["passed"]

    def test_graph_list(self):
        labels = [label for label, _ in formula_graphs()]
        assert len(labels) == len(set(labels))
        assert {"K3", "K4", "K5", "C4", "C5", "P6"} <= set(labels)


class TestKn:
    def test_small(self):
        rows = kn_report([3, 4], CFG)["rows"]
        assert [r["cover_size"] for r in rows] == [3, 3]
        assert all(r["verified"] for r in rows)

    def test_sixteen(self):
        (row,) = kn_report([16], CFG)["rows"]
        assert row["verified"]
        assert row["cover_size"] <= build_family(16, SUITABLE).size
        assert row["ceil_f_plus_1"] == 5

    def test_range(self):
        with pytest.raises(ValueError):
            kn_report([65], CFG)


class TestChordalLowerBound:
    def test_examples(self):
        report = corollary3_check([("C5", cycle_graph(5)), ("P3", path_graph(3)), ("grotzsch", mycielski_iterate(4))], CFG)
        c5, p3, gr = report["rows"]
        assert (c5["bound"], c5["mode"], c5["single_member_chordal"], c5["exhaustive_cc"], c5["smallest_verified_cover"]) == \
            (2, "exhaustive", False, 2, 2)
        assert (p3["bound"], p3["smallest_verified_cover"]) == (1, 1)
        assert gr["bound"] == 2 and gr["mode"] == "report-only" and gr["smallest_verified_cover"] >= 2
        assert report["passed"]

    def test_rejects_triangles(self):
        report = corollary3_check([("K3", complete_graph(3))], CFG)
        assert report["rows"][0]["status"].startswith("skipped")


class TestCoverGenerators:
    def test_exhaustive_c5(self):
        cover = exact_chordal_cover(line_graph(cycle_graph(5)).line)
        assert cover.size == 2 and cover_verify(cover).passed

    def test_exhaustive_budget(self):
        with pytest.raises(BudgetExceeded):
            exact_chordal_cover(complete_graph(7))

    @settings(max_examples=25)
    @given(graphs(max_n=6, max_m=7))
    def test_exhaustive_matches_brute_force(self, g):
        m = g.m
        cover = exact_chordal_cover(g)
        assert cover_verify(cover).passed
        if m == 0:
            assert cover.size == 0
            return
        chordal = [frozenset(s) for r in range(1, m + 1) for s in itertools.combinations(range(m), r)
                   if is_chordal(g.subgraph_edges(s))]
        best = next(k for k in range(1, m + 1)
                    if any(frozenset().union(*c) == frozenset(range(m)) for c in itertools.combinations(chordal, k)))
        assert cover.size == best

    @given(graphs(max_n=8))
    def test_random_covers_verify(self, g):
        lg = line_graph(g)
        assert cover_verify(random_equivalence_cover(lg, random.Random(1))).passed
        assert cover_verify(random_chordal_cover(lg.line, random.Random(1))).passed

    def test_random_equivalence_uses_triangles(self):
        lg = line_graph(complete_graph(4))
        shapes = set()
        for seed in range(20):
            cover = random_equivalence_cover(lg, random.Random(seed))
            for m in cover.members:
                shapes.add(len(m))
        assert 3 in shapes


class TestTrend:
    def test_bounds(self):
        report = theorem5_trend([3, 4, 5], RunConfig("trend", vertex_budget=24))
        assert [r["lower_bound"] for r in report["rows"]] == [2, 2, 3]
        assert all(r["lower_bound"] <= r["constructed_cover"] for r in report["rows"])
        assert report["passed"] and report["lower_bound_nondecreasing"]

    def test_budget_skips(self):
        report = theorem5_trend([5], RunConfig("trend"))
        assert report["rows"][0]["status"].startswith("skipped")


def test_reports_are_reproducible():
    a = to_json(corollary3_check([("C5", cycle_graph(5))], CFG))
    b = to_json(corollary3_check([("C5", cycle_graph(5))], CFG))
    assert a == b


def test_text_rendering():
    text = to_text(theorem1_table([("P3", path_graph(3))], CFG))
    assert "seed=3" in text and "match" in text and text.rstrip().endswith("PASS")
