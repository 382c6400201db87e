"""JSON documents for graphs, covers, orientations and order families.

Graph: ``{"n": 5, "edges": [[0, 1], ...]}`` with ``u < v`` and edges sorted.
Cover: ``{"target": <graph>, "class": "...", "members": [[edge index, ...], ...]}``
Orientation: ``{"graph": <graph>, "dirs": [[tail, head], ...]}``
Orientation family: ``{"graph": <graph>, "kind": "elbow|in-elbow|none", "orientations": [<dirs>, ...]}``
Order family: ``{"C": 4, "orders": [[0, 1, 2, 3], ...]}``
"""
from __future__ import annotations

import json
from typing import Any

from .errors import ElbowCoverError, GraphError
from .graph import Graph, build_graph
from .orders import OrderFamily
from .orientations import Orientation, OrientationFamily
from .recognition import COVER_CLASSES, Cover


class ParseError(ElbowCoverError):
    def __init__(self, location: str, message: str) -> None:
        super().__init__(f"{location}: {message}")
        self.location = location


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(where, f"expected an integer, got {value!r}")
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(where, f"expected a list, got {type(value).__name__}")
    return value


def _field(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(where, "expected an object")
    if key not in obj:
        raise ParseError(where, f"missing key {key!r}")
    return obj[key]


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(obj: Any, normalize: bool = False, where: str = "$") -> Graph:
    n = _int(_field(obj, "n", where), f"{where}.n")
    raw = _list(_field(obj, "edges", where), f"{where}.edges")
    pairs = []
    for i, e in enumerate(raw):
        loc = f"{where}.edges[{i}]"
        e = _list(e, loc)
        if len(e) != 2:
            raise ParseError(loc, "an edge has exactly two endpoints")
        pairs.append((_int(e[0], f"{loc}[0]"), _int(e[1], f"{loc}[1]")))
    if normalize:
        try:
            return build_graph(n, pairs, dedupe=True)
        except GraphError as exc:
            raise ParseError(f"{where}.edges", str(exc)) from None
    prev = None
    for i, (u, v) in enumerate(pairs):
        loc = f"{where}.edges[{i}]"
        if not 0 <= u < v < n:
            raise ParseError(loc, f"edge {[u, v]} must satisfy 0 <= u < v < n={n}")
        if prev is not None and (u, v) <= prev:
            raise ParseError(loc, "edges must be strictly lexicographically sorted")
        prev = (u, v)
    return Graph(n, tuple(pairs))


def cover_to_json(c: Cover) -> dict:
    return {
        "target": graph_to_json(c.target),
        "class": c.claimed_class,
        "members": [sorted(m) for m in c.members],
    }


def cover_from_json(obj: Any, normalize: bool = False) -> Cover:
    target = graph_from_json(_field(obj, "target", "$"), normalize, "$.target")
    cls = _field(obj, "class", "$")
    if cls not in COVER_CLASSES:
        raise ParseError("$.class", f"unknown class {cls!r}")
    members = []
    for i, m in enumerate(_list(_field(obj, "members", "$"), "$.members")):
        loc = f"$.members[{i}]"
        ids = [_int(x, f"{loc}[{j}]") for j, x in enumerate(_list(m, loc))]
        for j, x in enumerate(ids):
            if not 0 <= x < target.m:
                raise ParseError(f"{loc}[{j}]", f"edge index {x} outside target edge list")
        members.append(frozenset(ids))
    return Cover(target, tuple(members), cls)


def _dirs_to_json(o: Orientation) -> list:
    return [list(d) for d in o.dirs]


def _dirs_from_json(g: Graph, raw: Any, where: str) -> Orientation:
    dirs = []
    for i, d in enumerate(_list(raw, where)):
        loc = f"{where}[{i}]"
        d = _list(d, loc)
        if len(d) != 2:
            raise ParseError(loc, "a direction is a [tail, head] pair")
        dirs.append((_int(d[0], f"{loc}[0]"), _int(d[1], f"{loc}[1]")))
    try:
        return Orientation(g, tuple(dirs))
    except GraphError as exc:
        raise ParseError(where, str(exc)) from None


def orientation_to_json(o: Orientation) -> dict:
    return {"graph": graph_to_json(o.graph), "dirs": _dirs_to_json(o)}


def orientation_from_json(obj: Any, normalize: bool = False) -> Orientation:
    g = graph_from_json(_field(obj, "graph", "$"), normalize, "$.graph")
    return _dirs_from_json(g, _field(obj, "dirs", "$"), "$.dirs")


def family_to_json(fam: OrientationFamily) -> dict:
    return {
        "graph": graph_to_json(fam.graph),
        "kind": fam.claimed_kind or "none",
        "orientations": [_dirs_to_json(o) for o in fam.members],
    }


def family_from_json(obj: Any, normalize: bool = False) -> OrientationFamily:
    g = graph_from_json(_field(obj, "graph", "$"), normalize, "$.graph")
    kind = obj.get("kind", "none")
    if kind not in ("elbow", "in-elbow", "none"):
        raise ParseError("$.kind", f"unknown kind {kind!r}")
    members = tuple(
        _dirs_from_json(g, d, f"$.orientations[{i}]")
        for i, d in enumerate(_list(_field(obj, "orientations", "$"), "$.orientations"))
    )
    return OrientationFamily(g, members, None if kind == "none" else kind)


def orders_to_json(f: OrderFamily) -> dict:
    return {"C": f.universe_size, "orders": [list(o) for o in f.orders]}


def orders_from_json(obj: Any) -> OrderFamily:
    c = _int(_field(obj, "C", "$"), "$.C")
    orders = []
    for i, o in enumerate(_list(_field(obj, "orders", "$"), "$.orders")):
        loc = f"$.orders[{i}]"
        orders.append(tuple(_int(x, f"{loc}[{j}]") for j, x in enumerate(_list(o, loc))))
    try:
        return OrderFamily(c, tuple(orders))
    except GraphError as exc:
        raise ParseError("$.orders", str(exc)) from None


def detect_kind(obj: Any) -> str:
    """Which document ``obj`` is: graph, cover, orientation, family or orders."""
    if not isinstance(obj, dict):
        raise ParseError("$", "expected a JSON object")
    if "target" in obj and "members" in obj:
        return "cover"
    if "orientations" in obj:
        return "family"
    if "dirs" in obj:
        return "orientation"
    if "orders" in obj:
        return "orders"
    if "edges" in obj:
        return "graph"
    raise ParseError("$", "unrecognised document: no cover, orientation, order or graph keys")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
