"""``elbowcover`` command line.

Exit status: 0 when everything verified, 1 on a verification failure,
2 on budget, parse or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .errors import BudgetExceeded, ElbowCoverError, GraphError, VerificationError
from .experiments import (
    RunConfig,
    corollary3_check,
    kn_report,
    matching_graph,
    order_family_report,
    parse_graph_spec,
    recognition_agreement,
    roundtrip_check,
    formula_graphs,
    theorem1_table,
    chordal_transform_check,
    theorem5_trend,
    to_json,
    to_text,
)
from .graph import Graph, chromatic_number_exact, graph_generate, greedy_coloring, line_graph, GENERATOR_KINDS
from .orders import MIXING, PROPERTIES, build_family, in_elbow_orders, lglg_bound
from .orientations import ELBOW, IN_ELBOW, exact_elb, exact_inelb, orient_from_coloring, uncovered_pairs
from .recognition import COVER_CLASSES, cover_verify
from .serialize import (
    ParseError,
    cover_from_json,
    cover_to_json,
    detect_kind,
    dumps,
    family_from_json,
    family_to_json,
    graph_to_json,
    loads,
    orders_to_json,
)
from .transforms import chordal_cover_to_elbow, inelbow_to_equivalence_cover

PASS, FAIL, ERROR = 0, 1, 2


def _emit(args: argparse.Namespace, payload: Any, text: str | None = None, dot: str | None = None) -> None:
    if args.format == "dot":
        if dot is None:
            raise GraphError("--format dot is only available for graph outputs")
        out = dot
    elif args.format == "text" and text is not None:
        out = text
    elif isinstance(payload, str):
        out = payload
    else:
        out = dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _graph_text(g: Graph) -> str:
    lines = [f"n={g.n} m={g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def _config(args: argparse.Namespace, default_vertices: int = 16) -> RunConfig:
    return RunConfig(
        command=args.command,
        seed=args.seed,
        vertex_budget=args.budget_vertices or default_vertices,
        edge_budget=args.budget_edges,
        k_max=args.kmax,
        sources=tuple(getattr(args, "graphs", None) or ()),
        out=args.out,
    )


def _coloring(g: Graph, budget: int):
    try:
        return chromatic_number_exact(g, budget)[1]
    except BudgetExceeded:
        return greedy_coloring(g)


# -- verbs -------------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    g = graph_generate(args.kind, n=args.n, k=args.k, p=args.p, seed=args.seed,
                       triangle_free=args.triangle_free)
    _emit(args, graph_to_json(g), _graph_text(g), g.to_dot())
    return PASS


def cmd_linegraph(args: argparse.Namespace) -> int:
    lg = line_graph(parse_graph_spec(args.graph, args.normalize))
    _emit(args, graph_to_json(lg.line), _graph_text(lg.line), lg.line.to_dot())
    return PASS


def cmd_cover_build(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.graph, args.normalize)
    coloring = _coloring(g, args.budget_vertices or 16)
    lg = line_graph(g)
    if args.kind == "in-elbow":
        doc = family_to_json(orient_from_coloring(g, coloring, in_elbow_orders(coloring.k)))
    elif args.kind == "elbow":
        doc = family_to_json(orient_from_coloring(g, coloring, build_family(coloring.k, MIXING)))
    else:
        cover = inelbow_to_equivalence_cover(lg, orient_from_coloring(g, coloring, in_elbow_orders(coloring.k)))
        if args.kind == "equivalence":
            doc = cover_to_json(cover)
        else:
            doc = family_to_json(chordal_cover_to_elbow(lg, cover.with_class("chordal")))
    _emit(args, doc)
    return PASS


def _verify_doc(obj: Any, kind_override: str | None, normalize: bool) -> dict:
    kind = detect_kind(obj)
    if kind == "cover":
        c = cover_from_json(obj, normalize)
        if kind_override:
            c = c.with_class(kind_override)
        verdict = cover_verify(c).to_dict()
        reasons = []
        if not verdict["union_ok"]:
            reasons.append("union incomplete")
        if verdict["failed_members"]:
            reasons.append(f"members not {c.claimed_class}")
        return {"document": "cover", **verdict, "reasons": reasons}
    if kind == "family":
        fam = family_from_json(obj, normalize)
        check = kind_override or fam.claimed_kind
        if check not in (ELBOW, IN_ELBOW):
            raise ParseError("$.kind", "family has no claimed kind; pass --kind elbow or --kind in-elbow")
        missing = uncovered_pairs(fam, check)
        return {
            "document": "orientation-family",
            "kind": check,
            "size": fam.size,
            "passed": not missing,
            "uncovered_pairs": [{"edges": [list(fam.graph.edges[e]), list(fam.graph.edges[f])], "at": x}
                                for e, f, x in missing],
            "reasons": ["uncovered pair"] if missing else [],
        }
    raise ParseError("$", f"cover-verify expects a cover or orientation family, got a {kind}")


def cmd_cover_verify(args: argparse.Namespace) -> int:
    with open(args.path, encoding="utf-8") as fh:
        obj = loads(fh.read())
    verdict = _verify_doc(obj, args.kind, args.normalize)
    text = ("PASS" if verdict["passed"] else "FAIL " + "; ".join(verdict["reasons"])) + "\n"
    _emit(args, verdict, text)
    return PASS if verdict["passed"] else FAIL


def cmd_elb_exact(args: argparse.Namespace) -> int:
    g = parse_graph_spec(args.graph, args.normalize)
    chi, _ = chromatic_number_exact(g, args.budget_vertices or 16)
    out = {
        "graph": args.graph,
        "n": g.n,
        "m": g.m,
        "chi": chi,
        "formula": lglg_bound(chi) if chi >= 2 else None,
        "elb": exact_elb(g, k_max=args.kmax, edge_budget=args.budget_edges),
        "inelb": exact_inelb(g, k_max=args.kmax, edge_budget=args.budget_edges),
        "k_max": args.kmax,
    }
    text = " ".join(f"{k}={v}" for k, v in out.items()) + "\n"
    _emit(args, out, text)
    return PASS


def cmd_orders(args: argparse.Namespace) -> int:
    _emit(args, orders_to_json(build_family(args.C, args.property)))
    return PASS


def _report(args: argparse.Namespace, report: dict) -> int:
    _emit(args, to_json(report), to_text(report))
    return PASS if report["passed"] else FAIL


def _graphs(specs: Sequence[str] | None, default: list[tuple[str, Graph]], normalize: bool) -> list[tuple[str, Graph]]:
    if not specs:
        return default
    return [(s, parse_graph_spec(s, normalize)) for s in specs]


def cmd_report_theorem1(args: argparse.Namespace) -> int:
    default = formula_graphs() + [("matching:2", matching_graph(2))]
    return _report(args, theorem1_table(_graphs(args.graphs, default, args.normalize), _config(args)))


def cmd_report_kn(args: argparse.Namespace) -> int:
    return _report(args, kn_report(args.n or [3, 4, 8, 16], _config(args)))


def cmd_report_cor3(args: argparse.Namespace) -> int:
    default = [(s, parse_graph_spec(s)) for s in ("C5", "P3", "grotzsch")]
    graphs = _graphs(args.graphs, default, args.normalize)
    return _report(args, corollary3_check(graphs, _config(args), attempts=args.attempts))


def cmd_report_trend(args: argparse.Namespace) -> int:
    return _report(args, theorem5_trend(args.k or [3, 4, 5], _config(args, default_vertices=24)))


def cmd_report_pipeline(args: argparse.Namespace) -> int:
    return _report(args, chordal_transform_check(_config(args), count=args.count))


def cmd_report_roundtrip(args: argparse.Namespace) -> int:
    return _report(args, roundtrip_check(_config(args), count=args.count))


def cmd_report_orders(args: argparse.Namespace) -> int:
    return _report(args, order_family_report(_config(args), max_c=args.max_c))


def cmd_report_recognition(args: argparse.Namespace) -> int:
    return _report(args, recognition_agreement(_config(args), samples=args.count))


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-vertices", type=int, default=None,
                        help="exact chromatic number budget (default 16, 24 for report-trend)")
    common.add_argument("--budget-edges", type=int, default=12, help="exact elbow solver edge budget")
    common.add_argument("--kmax", type=int, default=4, help="largest family size the exact solver tries")
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--normalize", action="store_true", help="accept unsorted or duplicated edges in input JSON")

    parser = argparse.ArgumentParser(prog="elbowcover", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def verb(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = verb("gen", cmd_gen, "generate a graph")
    p.add_argument("kind", choices=GENERATOR_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--triangle-free", action="store_true")

    p = verb("linegraph", cmd_linegraph, "line graph of a graph")
    p.add_argument("graph", help="graph spec (K5, C5, random:10:0.3:7, ...) or JSON path")

    p = verb("cover-build", cmd_cover_build, "build a verified cover")
    p.add_argument("graph")
    p.add_argument("--kind", choices=("in-elbow", "elbow", "equivalence", "chordal-elbow"), default="equivalence")

    p = verb("cover-verify", cmd_cover_verify, "verify a cover or orientation family JSON")
    p.add_argument("path")
    p.add_argument("--kind", choices=COVER_CLASSES + (ELBOW, IN_ELBOW), default=None,
                   help="override the class or kind claimed in the document")

    p = verb("elb-exact", cmd_elb_exact, "exact elb and inelb of a small graph")
    p.add_argument("graph")

    p = verb("orders", cmd_orders, "export a verified order family")
    p.add_argument("C", type=int)
    p.add_argument("--property", choices=PROPERTIES, default=MIXING)

    p = verb("report-theorem1", cmd_report_theorem1, "exact elb against ceil(lg lg chi) + 1")
    p.add_argument("graphs", nargs="*")
    p = verb("report-kn", cmd_report_kn, "equivalence covers of L(K_n)")
    p.add_argument("n", nargs="*", type=int)
    p = verb("report-cor3", cmd_report_cor3, "chordal cover sizes against the lower bound")
    p.add_argument("graphs", nargs="*")
    p.add_argument("--attempts", type=int, default=10)
    p = verb("report-trend", cmd_report_trend, "Mycielski iterates: bound and constructed cover")
    p.add_argument("k", nargs="*", type=int)

    p = verb("report-pipeline", cmd_report_pipeline, "chordal-to-elbow transform on random triangle-free graphs")
    p.add_argument("--count", type=int, default=100)
    p = verb("report-roundtrip", cmd_report_roundtrip, "cover round trips on random graphs")
    p.add_argument("--count", type=int, default=50)
    p = verb("report-orders", cmd_report_orders, "order family sizes and checks")
    p.add_argument("--max-c", type=int, default=16)
    p = verb("report-recognition", cmd_report_recognition, "recognizers against brute-force oracles")
    p.add_argument("--count", type=int, default=200)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return FAIL
    except (ElbowCoverError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
