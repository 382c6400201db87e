"""Acceptance gate: one pass/fail line per criterion.

Run with pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.  Runtime limits are pinned below and
each check fails if it overruns its limit.
"""
from __future__ import annotations

import sys
import time

import pytest

from elbowcover.experiments import (
    RunConfig,
    corollary3_check,
    order_family_report,
    recognition_agreement,
    roundtrip_check,
    formula_graphs,
    theorem1_table,
    chordal_transform_check,
    theorem5_trend,
    to_json,
)
from elbowcover.graph import cycle_graph
from elbowcover.orders import build_family

SEED = 7
LIMITS = {1: 600.0, 2: 120.0, 3: 120.0, 4: 60.0, 5: 600.0, 6: 600.0, 7: 300.0, 8: 1200.0}
RESULTS: dict[int, str] = {}
FIRST_RUN: dict[int, str] = {}


def _cfg(n: int, **kw) -> RunConfig:
    return RunConfig(f"acceptance-{n}", seed=SEED, **kw)


REPORTS = {
    1: lambda: theorem1_table(formula_graphs(), _cfg(1)),
    2: lambda: chordal_transform_check(_cfg(2), count=100),
    3: lambda: roundtrip_check(_cfg(3), count=50),
    4: lambda: corollary3_check([("C5", cycle_graph(5))], _cfg(4)),
    5: lambda: order_family_report(_cfg(5), max_c=16),
    6: lambda: recognition_agreement(_cfg(6), max_n=6, samples=200, sample_n=7),
    7: lambda: theorem5_trend([3, 4, 5], _cfg(7, vertex_budget=24)),
}


def _judge_1(r: dict) -> tuple[bool, str]:
    in_scope = [row for row in r["rows"] if row["status"] != "vacuous-pair convention"]
    matched = sum(row["status"] == "match" for row in in_scope)
    ok = r["mismatches"] == 0 and matched == len(in_scope) and matched > 0
    return ok, f"{matched}/{len(in_scope)} graphs with adjacent pairs match, {r['mismatches']} mismatches"


def _judge_2(r: dict) -> tuple[bool, str]:
    eq_ok = sum(
        row["status"] == "ok" and all(row["routes"][k]["ok"] for k in ("suitable", "mixing-doubled"))
        for row in r["rows"]
    )
    return eq_ok == 100 and r["passed"], f"{eq_ok}/100 graphs: same size, elbow cover, strong goodness"


def _judge_3(r: dict) -> tuple[bool, str]:
    a = sum(row.get("inelbow_roundtrip_ok", False) for row in r["rows"])
    b = sum(row.get("eq_to_elbow_ok", False) for row in r["rows"])
    return a == 50 and b == 50, f"in-elbow 3x round trip {a}/50, equivalence to elbow 2x {b}/50"


def _judge_4(r: dict) -> tuple[bool, str]:
    (row,) = r["rows"]
    ok = (row["bound"] == 2 and row["mode"] == "exhaustive" and row["single_member_chordal"] is False
          and row["exhaustive_cc"] == 2 and row["smallest_verified_cover"] == 2)
    return ok, f"bound {row['bound']}, exhaustive cc {row['exhaustive_cc']}, single member chordal: {row['single_member_chordal']}"


def _judge_5(r: dict) -> tuple[bool, str]:
    failed = [k for k, v in r["checks"].items() if v is not True]
    sizes = {row["C"]: row["mixing_size"] for row in r["rows"]}
    return not failed, f"mixing sizes C=2,4,16: {sizes[2]},{sizes[4]},{sizes[16]}; failed checks: {failed or 'none'}"


def _judge_6(r: dict) -> tuple[bool, str]:
    total = sum(row["graphs"] for row in r["rows"])
    return not r["disagreements"], f"{total} graphs, {len(r['disagreements'])} disagreements"


def _judge_7(r: dict) -> tuple[bool, str]:
    bounds = [row.get("lower_bound") for row in r["rows"]]
    built = [row.get("constructed_cover") for row in r["rows"]]
    ok = bounds == [2, 2, 3] and r["lower_bound_nondecreasing"] and all(
        b is not None and c is not None and b <= c for b, c in zip(bounds, built))
    return ok, f"bounds {bounds}, constructed covers {built}"


JUDGES = {1: _judge_1, 2: _judge_2, 3: _judge_3, 4: _judge_4, 5: _judge_5, 6: _judge_6, 7: _judge_7}


def _record(n: int, ok: bool, detail: str, elapsed: float) -> str:
    within = elapsed <= LIMITS[n]
    line = (f"criterion {n}: {'PASS' if ok and within else 'FAIL'}  {detail}  "
            f"({elapsed:.1f}s, limit {LIMITS[n]:.0f}s)")
    RESULTS[n] = line
    print(line)
    return line


def _run(n: int) -> bool:
    start = time.perf_counter()
    report = REPORTS[n]()
    elapsed = time.perf_counter() - start
    FIRST_RUN[n] = to_json(report)
    ok, detail = JUDGES[n](report)
    _record(n, ok, detail, elapsed)
    return ok and elapsed <= LIMITS[n]


def _determinism() -> bool:
    start = time.perf_counter()
    build_family.cache_clear()
    differing = []
    for n in REPORTS:
        if n not in FIRST_RUN:
            FIRST_RUN[n] = to_json(REPORTS[n]())
            build_family.cache_clear()
        if to_json(REPORTS[n]()) != FIRST_RUN[n]:
            differing.append(n)
    elapsed = time.perf_counter() - start
    detail = f"reports 1-7 rerun, byte-identical JSON: {'all' if not differing else 'differs for ' + str(differing)}"
    _record(8, not differing, detail, elapsed)
    return not differing and elapsed <= LIMITS[8]


@pytest.mark.parametrize("n", sorted(REPORTS))
def test_criterion(n):
    assert _run(n), RESULTS[n]


def test_criterion_8_determinism():
    assert _determinism(), RESULTS[8]


if __name__ == "__main__":
    results = [_run(n) for n in sorted(REPORTS)] + [_determinism()]
    sys.exit(0 if all(results) else 1)
