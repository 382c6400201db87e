"""Report generators and the checks behind the acceptance run.

Every report is a plain dict with a ``header`` (toolkit version, command,
seed, budgets), a list of ``rows`` and a ``passed`` flag.  Nothing in a
report depends on wall-clock time, so the same config always serializes to
the same bytes.  Cover sizes only enter a report after the cover verified.
"""
from __future__ import annotations

import itertools
import json
import math
import os
import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import __version__, kernels
from ._pykernels import reduce_masks
from .errors import BudgetExceeded, ConstructionError, ElbowCoverError, GraphError, VerificationError
from .graph import (
    Graph,
    LineGraphMap,
    all_labelled_graphs,
    build_graph,
    chromatic_number_exact,
    complete_graph,
    cycle_graph,
    graph_generate,
    greedy_coloring,
    is_connected,
    line_graph,
    mycielski_iterate,
    nonisomorphic_graphs,
    path_graph,
    random_graph,
    triangles,
)
from .orders import (
    MIXING,
    SUITABLE,
    build_family,
    check_property,
    in_elbow_orders,
    lglg_bound,
    min_family_search,
    yardstick,
)
from .orientations import ELBOW, IN_ELBOW, elbow_to_inelbow, exact_elb, orient_from_coloring, verify_orientation_cover
from .recognition import (
    Cover,
    cover_verify,
    is_chordal,
    is_chordal_oracle,
    is_interval,
    is_interval_oracle,
)
from .transforms import (
    chordal_cover_to_elbow,
    covering_chain,
    equivalence_cover_to_elbow,
    equivalence_cover_to_inelbow,
    inelbow_to_equivalence_cover,
)

EXHAUSTIVE_LINE_EDGES = 15
VACUOUS = "vacuous-pair convention"


@dataclass(frozen=True)
class RunConfig:
    command: str
    seed: int = 0
    vertex_budget: int = 16
    edge_budget: int = 12
    k_max: int = 4
    sources: tuple[str, ...] = ()
    out: str | None = None

    def __post_init__(self) -> None:
        for name in ("vertex_budget", "edge_budget", "k_max"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    def header(self) -> dict:
        return {
            "toolkit": "elbowcover",
            "version": __version__,
            "command": self.command,
            "seed": self.seed,
            "budgets": {
                "vertices": self.vertex_budget,
                "edges": self.edge_budget,
                "k_max": self.k_max,
            },
        }


def _report(cfg: RunConfig, rows: list[dict], passed: bool, **extra) -> dict:
    return {"header": cfg.header(), "rows": rows, "passed": passed, **extra}


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def to_text(report: dict) -> str:
    h = report["header"]
    lines = [
        f"# {h['toolkit']} {h['version']}  command={h['command']}  seed={h['seed']}",
        "# budgets: " + ", ".join(f"{k}={v}" for k, v in h["budgets"].items()),
    ]
    rows = report.get("rows", [])
    if rows:
        cols: list[str] = []
        for r in rows:
            cols += [c for c in r if c not in cols and not isinstance(r[c], (list, dict))]
        cells = [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    for key in sorted(k for k in report if k not in ("header", "rows", "passed")):
        lines.append(f"{key}: {json.dumps(report[key], sort_keys=True)}")
    lines.append("PASS" if report["passed"] else "FAIL")
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v)


# -- graph sources -----------------------------------------------------------------

def matching_graph(k: int) -> Graph:
    return build_graph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


_SHORT = {"K": "complete", "C": "cycle", "P": "path", "S": "star", "M": "mycielski"}


def parse_graph_spec(spec: str, normalize: bool = False) -> Graph:
    """Graph from a short spec or a JSON file path.

    Accepted: ``K5`` ``C5`` ``P3`` ``S4`` ``M4`` (complete, cycle, path,
    star with that many leaves, Mycielski iterate), ``grotzsch``,
    ``matching:K``, ``complete:N`` (likewise cycle, path, star, mycielski),
    ``random:N:P:SEED`` and ``random-tf:N:P:SEED``.
    """
    if spec.endswith(".json") or os.path.sep in spec:
        from .serialize import graph_from_json, loads

        with open(spec, encoding="utf-8") as fh:
            return graph_from_json(loads(fh.read()), normalize=normalize)
    if spec.lower() == "grotzsch":
        return mycielski_iterate(4)
    m = re.fullmatch(r"([KCPSM])(\d+)", spec)
    if m:
        spec = f"{_SHORT[m.group(1)]}:{m.group(2)}"
    kind, *args = spec.split(":")
    try:
        if kind in ("random", "random-tf"):
            if len(args) != 3:
                raise GraphError(f"{kind} takes N:P:SEED")
            return random_graph(int(args[0]), float(args[1]), int(args[2]), triangle_free=kind == "random-tf")
        if len(args) != 1:
            raise GraphError(f"{kind} takes exactly one integer parameter")
        value = int(args[0])
    except ValueError as exc:
        raise GraphError(f"bad graph spec {spec!r}: {exc}") from None
    if kind == "matching":
        return matching_graph(value)
    if kind == "mycielski":
        return graph_generate("mycielskian-iterate", k=value)
    return graph_generate(kind, n=value)


def formula_graphs() -> list[tuple[str, Graph]]:
    """Connected graphs on at most 5 vertices with 2..8 edges, then the named extras."""
    out = []
    for n in range(3, 6):
        for g in nonisomorphic_graphs(n):
            if 2 <= g.m <= 8 and is_connected(g):
                out.append((f"n{n}:" + "".join(f"{u}{v}" for u, v in g.edges), g))
    out += [("K3", complete_graph(3)), ("K4", complete_graph(4)), ("K5", complete_graph(5)),
            ("C4", cycle_graph(4)), ("C5", cycle_graph(5))]
    out += [(f"P{n}", path_graph(n)) for n in range(1, 7)]
    return out


# -- cover generators ---------------------------------------------------------------

def random_equivalence_cover(lg: LineGraphMap, rng: random.Random) -> Cover:
    """Random equivalence cover of L(G) made of star cliques and triangle cliques.

    Members are filled from a shuffled candidate list; each member takes a
    clique whenever its base edges are still unused in that member and it
    covers at least one new line edge.
    """
    base, line = lg.base, lg.line
    cliques: list[tuple[str, list[int]]] = []
    for v in range(base.n):
        if len(base.incident_edges[v]) >= 2:
            cliques.append(("star", list(base.incident_edges[v])))
    for a, b, c in triangles(base):
        cliques.append(("triangle", [base.index_of(a, b), base.index_of(a, c), base.index_of(b, c)]))
    uncovered = set(range(line.m))
    members = []
    while uncovered:
        rng.shuffle(cliques)
        used: set[int] = set()
        ids: set[int] = set()
        for shape, edges in cliques:
            avail = [e for e in edges if e not in used]
            if shape == "star":
                if rng.random() < 0.3 and len(avail) > 2:
                    avail = rng.sample(avail, rng.randint(2, len(avail)))
            elif len(avail) < 3:
                continue
            new = {line.index_of(e, f) for e, f in itertools.combinations(sorted(avail), 2)}
            if len(avail) >= 2 and new & uncovered:
                used.update(avail)
                ids |= new
        members.append(frozenset(ids))
        uncovered -= ids
    cover = Cover(line, tuple(members), "equivalence")
    if not cover_verify(cover).passed:
        raise VerificationError("random equivalence cover failed verification")
    return cover


def random_chordal_cover(line: Graph, rng: random.Random) -> Cover:
    """Greedy cover by maximal chordal subgraphs, seeded by a shuffled edge order."""
    uncovered = set(range(line.m))
    members = []
    while uncovered:
        first = sorted(uncovered)
        rest = [i for i in range(line.m) if i not in uncovered]
        rng.shuffle(first)
        rng.shuffle(rest)
        member: frozenset[int] = frozenset()
        for i in first + rest:
            trial = member | {i}
            if is_chordal(line.subgraph_edges(trial)):
                member = trial
        members.append(member)
        uncovered -= member
    cover = Cover(line, tuple(members), "chordal")
    if not cover_verify(cover).passed:
        raise VerificationError("greedy chordal cover failed verification")
    return cover


def _witness(masks: Sequence[int], full: int, k: int) -> list[int] | None:
    def go(unc: int, left: int, chosen: list[int]) -> list[int] | None:
        if unc == 0:
            return chosen
        if left == 0:
            return None
        low = unc & -unc
        for mk in masks:
            if mk & low:
                found = go(unc & ~mk, left - 1, chosen + [mk])
                if found is not None:
                    return found
        return None

    return go(full, k, [])


def exact_chordal_cover(line: Graph, max_edges: int = EXHAUSTIVE_LINE_EDGES) -> Cover:
    """A minimum chordal cover, by enumerating every chordal spanning subgraph."""
    m = line.m
    if m > max_edges:
        raise BudgetExceeded(f"exhaustive chordal cover needs <= {max_edges} edges, got {m}")
    if m == 0:
        return Cover(line, (), "chordal")
    full = (1 << m) - 1
    chordal = [
        s for s in range(1, full + 1)
        if is_chordal(line.subgraph_edges(i for i in range(m) if s >> i & 1))
    ]
    k = kernels.min_cover(chordal, full, m)
    chosen = _witness(reduce_masks(chordal), full, k)
    if chosen is None or len(chosen) != k:
        raise VerificationError("cover search and witness search disagree")
    cover = Cover(line, tuple(frozenset(i for i in range(m) if s >> i & 1) for s in chosen), "chordal")
    if not cover_verify(cover).passed:
        raise VerificationError("exhaustive chordal cover failed verification")
    return cover


# -- reports -----------------------------------------------------------------------

def theorem1_table(graphs: Iterable[tuple[str, Graph]], cfg: RunConfig) -> dict:
    rows = []
    for label, g in graphs:
        row: dict = {"graph": label, "n": g.n, "m": g.m}
        try:
            chi, _ = chromatic_number_exact(g, cfg.vertex_budget)
        except BudgetExceeded as exc:
            rows.append({**row, "chi": None, "formula": None, "exact_elb": None, "status": f"skipped: {exc}"})
            continue
        formula = lglg_bound(chi) if chi >= 2 else None
        row.update(chi=chi, formula=formula)
        if not g.adjacent_pairs:
            rows.append({**row, "exact_elb": 0, "status": VACUOUS})
            continue
        try:
            exact = exact_elb(g, k_max=cfg.k_max, edge_budget=cfg.edge_budget)
        except BudgetExceeded as exc:
            rows.append({**row, "exact_elb": None, "status": f"skipped: {exc}"})
            continue
        if exact is None and formula > cfg.k_max:
            status = f"skipped: elb exceeds k_max={cfg.k_max}"
        else:
            status = "match" if exact == formula else "mismatch"
        rows.append({**row, "exact_elb": exact, "status": status})
    mismatches = sum(r["status"] == "mismatch" for r in rows)
    checked = sum(r["status"] == "match" for r in rows)
    return _report(cfg, rows, mismatches == 0, checked=checked, mismatches=mismatches)


def kn_report(ns: Iterable[int], cfg: RunConfig) -> dict:
    rows = []
    for n in ns:
        if not 1 <= n <= 64:
            raise ValueError("K_n report covers 1 <= n <= 64")
        row: dict = {"n": n, "lglg_n": round(math.log2(math.log2(n)), 6) if n >= 3 else None}
        if n >= 3:
            f = yardstick(n)
            row.update(f_plus_1=round(f + 1, 6), ceil_f_plus_1=math.ceil(f) + 1)
        if n < 3:
            rows.append({**row, "cover_size": 0, "verified": True, "family": "none", "status": "edgeless line graph"})
            continue
        g = complete_graph(n)
        try:
            fam = in_elbow_orders(n)
        except (ConstructionError, BudgetExceeded) as exc:
            rows.append({**row, "cover_size": None, "verified": False, "family": None, "status": f"skipped: {exc}"})
            continue
        cover = inelbow_to_equivalence_cover(line_graph(g), orient_from_coloring(g, greedy_coloring(g), fam))
        ok = cover_verify(cover).passed
        rows.append({**row, "cover_size": cover.size if ok else None, "verified": ok,
                     "family": fam.origin, "status": "ok" if ok else "verification failed"})
    return _report(cfg, rows, all(r["verified"] or r["status"].startswith("skipped") for r in rows))


def corollary3_check(graphs: Iterable[tuple[str, Graph]], cfg: RunConfig, attempts: int = 10) -> dict:
    rows = []
    for gi, (label, g) in enumerate(graphs):
        row: dict = {"graph": label, "n": g.n, "m": g.m}
        if triangles(g):
            rows.append({**row, "status": "skipped: graph has a triangle"})
            continue
        try:
            chi, _ = chromatic_number_exact(g, cfg.vertex_budget)
        except BudgetExceeded as exc:
            rows.append({**row, "status": f"skipped: {exc}"})
            continue
        lg = line_graph(g)
        row.update(chi=chi, line_vertices=lg.line.n, line_edges=lg.line.m)
        if not g.adjacent_pairs:
            rows.append({**row, "bound": 0, "mode": "trivial", "single_member_chordal": None,
                         "exhaustive_cc": 0, "smallest_verified_cover": 0, "status": VACUOUS})
            continue
        bound = lglg_bound(chi)
        single = is_chordal(lg.line)
        sizes = []
        exhaustive = None
        if lg.line.m <= EXHAUSTIVE_LINE_EDGES:
            mode = "exhaustive"
            exhaustive = exact_chordal_cover(lg.line).size
            sizes.append(exhaustive)
        else:
            mode = "report-only"
        rng = random.Random(cfg.seed * 7919 + gi)
        sizes += [random_chordal_cover(lg.line, rng).size for _ in range(attempts)]
        try:
            sizes.append(covering_chain(g, cfg.vertex_budget, edge_budget=0)["best_cover"])
        except (BudgetExceeded, ConstructionError):
            pass
        smallest = min(sizes)
        ok = smallest >= bound
        if exhaustive is not None:
            ok = ok and exhaustive >= bound and (exhaustive == 1) == single
        rows.append({**row, "bound": bound, "mode": mode, "single_member_chordal": single,
                     "exhaustive_cc": exhaustive, "smallest_verified_cover": smallest,
                     "status": "ok" if ok else "cover below bound"})
    return _report(cfg, rows, all(r["status"] != "cover below bound" for r in rows))


def theorem5_trend(ks: Iterable[int], cfg: RunConfig) -> dict:
    rows = []
    for k in ks:
        g = mycielski_iterate(k)
        row: dict = {"k": k, "n": g.n, "m": g.m}
        try:
            chain = covering_chain(g, cfg.vertex_budget, cfg.edge_budget, cfg.k_max)
        except BudgetExceeded as exc:
            rows.append({**row, "status": f"skipped: {exc}"})
            continue
        ok = chain["chi"] == k and not chain["violations"] and chain["lower_bound"] <= chain["best_cover"]
        rows.append({**row, "chi": chain["chi"], "lower_bound": chain["lower_bound"],
                     "constructed_cover": chain["best_cover"], "exact_elb": chain["exact_elb"],
                     "violations": chain["violations"], "status": "ok" if ok else "violation"})
    bounds = [r["lower_bound"] for r in rows if "lower_bound" in r]
    monotone = all(a <= b for a, b in zip(bounds, bounds[1:]))
    passed = monotone and all(r["status"] != "violation" for r in rows)
    return _report(cfg, rows, passed, lower_bound_nondecreasing=monotone)


# -- acceptance checks -------------------------------------------------------------

def _guard(fn: Callable[[], dict]) -> dict:
    try:
        return fn()
    except (ElbowCoverError, ValueError) as exc:
        return {"status": f"error: {type(exc).__name__}: {exc}"}


def chordal_transform_check(cfg: RunConfig, count: int = 100, extra_greedy: bool = True) -> dict:
    """Chordal covers from the equivalence pipeline, pushed through the chordal-to-elbow transform."""
    rows = []
    for i in range(count):
        n = 5 + i % 8
        p = (0.3, 0.45, 0.6)[i % 3]
        seed = cfg.seed * 100_003 + i
        g = random_graph(n, p, seed, triangle_free=True)
        lg = line_graph(g)

        def run() -> dict:
            chi, coloring = chromatic_number_exact(g, cfg.vertex_budget)
            routes = {}
            sources = {
                "suitable": lambda: inelbow_to_equivalence_cover(
                    lg, orient_from_coloring(g, coloring, in_elbow_orders(chi))),
                "mixing-doubled": lambda: inelbow_to_equivalence_cover(
                    lg, elbow_to_inelbow(orient_from_coloring(g, coloring, build_family(chi, MIXING)))),
            }
            if extra_greedy:
                sources["greedy-chordal"] = lambda: random_chordal_cover(lg.line, random.Random(seed))
            for name, make in sources.items():
                cover = make().with_class("chordal")
                fam = chordal_cover_to_elbow(lg, cover)
                ok = fam.size == cover.size and verify_orientation_cover(fam, ELBOW)
                routes[name] = {"cover": cover.size, "elbow": fam.size, "ok": ok}
            return {"chi": chi, "routes": routes,
                    "status": "ok" if all(r["ok"] for r in routes.values()) else "failed"}

        rows.append({"index": i, "graph": f"random-tf:{n}:{p}:{seed}", "n": n, "m": g.m, **_guard(run)})
    passed_count = sum(r["status"] == "ok" for r in rows)
    return _report(cfg, rows, passed_count == count, passed_count=passed_count, total=count)


def roundtrip_check(cfg: RunConfig, count: int = 50) -> dict:
    """In-elbow -> equivalence -> in-elbow (3x) and equivalence -> elbow (2x) on seeded graphs."""
    rows = []
    for i in range(count):
        n = 4 + i % 6
        seed = cfg.seed * 100_019 + i
        g = random_graph(n, 0.55, seed)
        lg = line_graph(g)

        def run() -> dict:
            coloring = greedy_coloring(g)
            start = orient_from_coloring(g, coloring, in_elbow_orders(coloring.k))
            eq = inelbow_to_equivalence_cover(lg, start)
            back = equivalence_cover_to_inelbow(lg, eq)
            a_ok = (eq.size == start.size and back.size == 3 * eq.size
                    and verify_orientation_cover(back, IN_ELBOW))
            rand_eq = random_equivalence_cover(lg, random.Random(seed))
            elbow = equivalence_cover_to_elbow(lg, rand_eq)
            inelbow = equivalence_cover_to_inelbow(lg, rand_eq)
            b_ok = (elbow.size == 2 * rand_eq.size and verify_orientation_cover(elbow, ELBOW)
                    and inelbow.size == 3 * rand_eq.size and verify_orientation_cover(inelbow, IN_ELBOW))
            return {
                "inelbow": start.size, "eq": eq.size, "inelbow_back": back.size,
                "random_eq": rand_eq.size, "triangle_cliques": len(triangles(g)),
                "eq_to_elbow": elbow.size, "eq_to_inelbow": inelbow.size,
                "inelbow_roundtrip_ok": a_ok, "eq_to_elbow_ok": b_ok,
                "status": "ok" if a_ok and b_ok else "failed",
            }

        rows.append({"index": i, "graph": f"random:{n}:0.55:{seed}", "n": n, "m": g.m, **_guard(run)})
    passed_count = sum(r["status"] == "ok" for r in rows)
    return _report(cfg, rows, passed_count == count, passed_count=passed_count, total=count)


def order_family_report(cfg: RunConfig, max_c: int = 16, exact_c: int = 6) -> dict:
    rows = []
    for c in range(1, max_c + 1):
        row: dict = {"C": c}
        for prop, key in ((SUITABLE, "suitable"), (MIXING, "mixing")):
            try:
                fam = build_family(c, prop)
                ok = check_property(fam, prop)
                row.update({f"{key}_size": fam.size, f"{key}_origin": fam.origin, f"{key}_verified": ok})
            except (ConstructionError, BudgetExceeded) as exc:
                row.update({f"{key}_size": None, f"{key}_origin": f"error: {exc}", f"{key}_verified": False})
            row[f"{key}_exact"] = min_family_search(c, prop).size if c <= exact_c else None
        rows.append(row)
    by_c = {r["C"]: r for r in rows}
    checks = {
        "N(3,3)=3": by_c.get(3, {}).get("suitable_exact") == 3,
        "N(4,3)=3": by_c.get(4, {}).get("suitable_exact") == 3,
        "mixing exact 1,2,2 for C=2,3,4": [by_c.get(c, {}).get("mixing_exact") for c in (2, 3, 4)] == [1, 2, 2],
        "all families verified": all(r["suitable_verified"] and r["mixing_verified"] for r in rows),
        "mixing sizes <= 1,2,3 for C=2,4,16": all(
            c in by_c and by_c[c]["mixing_size"] is not None and by_c[c]["mixing_size"] <= bound
            for c, bound in ((2, 1), (4, 2), (16, 3))
        ) if max_c >= 16 else None,
    }
    return _report(cfg, rows, all(v is not False for v in checks.values()), checks=checks)


def recognition_agreement(cfg: RunConfig, max_n: int = 6, samples: int = 200, sample_n: int = 7) -> dict:
    disagreements = []
    rows = []

    def compare(g: Graph, label: str) -> None:
        for name, fast, oracle in (("chordal", is_chordal, is_chordal_oracle),
                                   ("interval", is_interval, is_interval_oracle)):
            a, b = fast(g), oracle(g)
            if a != b:
                disagreements.append({"graph": label, "edges": [list(e) for e in g.edges],
                                      "test": name, "fast": a, "oracle": b})

    for n in range(1, max_n + 1):
        counts = {"chordal": 0, "interval": 0}
        total = 0
        for g in all_labelled_graphs(n):
            compare(g, f"labelled n={n}")
            total += 1
            counts["chordal"] += is_chordal(g)
            counts["interval"] += is_interval(g)
        rows.append({"source": f"all labelled, n={n}", "graphs": total, **counts})
    rng = random.Random(cfg.seed)
    counts = {"chordal": 0, "interval": 0}
    for i in range(samples):
        g = random_graph(sample_n, rng.choice((0.2, 0.35, 0.5, 0.65, 0.8)), rng.randrange(2**32))
        compare(g, f"sample {i}")
        counts["chordal"] += is_chordal(g)
        counts["interval"] += is_interval(g)
    rows.append({"source": f"seeded random, n={sample_n}", "graphs": samples, **counts})
    return _report(cfg, rows, not disagreements, disagreements=disagreements)

