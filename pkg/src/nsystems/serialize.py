"""JSON documents for systems and linear maps.

Rationals are written as canonical ``"p"`` / ``"p/q"`` strings, keys come
in a fixed order and the layout is fixed, so emitting is byte-deterministic
and ``parse_system(emit_system(x)) == x``.

System document::

    {"n": 4, "class": "generalized", "self_similar_ratio": "2",
     "breakpoints": [{"q": "5", "value": ["1", "1", "1", "2"]}, ...]}

``class`` is ``exact``, ``generalized`` or ``rigid`` (the latter with a
``mesh`` key); ``self_similar_ratio`` is present only for self-similar
systems.  A plain PLPath carries no class, so it is emitted as
``generalized`` and the class key is ignored when parsing one.

Map document: ``{"m": 5, "n": 4, "rows": [[...], ...]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .paths import EXACT, GENERALIZED, PLPath, SystemClass
from .rational import format_rational, parse_rational
from .spectrum import LinearMap, SelfSimilarSystem


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=True) + "\n"


def _load(document: str):
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{exc.lineno}:{exc.colno}") from None


def _rational(value, where: str) -> Fraction:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise ParseError(f"expected a rational string, got {value!r}", where)
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise ParseError(str(exc), where) from None


def _field(doc: dict, key: str, where: str):
    if key not in doc:
        raise ParseError(f"missing key {key!r}", where or "<root>")
    return doc[key]


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list, got {type(value).__name__}", where)
    return value


def _count(value, where: str, least: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < least:
        raise ParseError(f"expected an integer >= {least}, got {value!r}", where)
    return value


def emit_system(system) -> str:
    if isinstance(system, SelfSimilarSystem):
        path, cls, ratio = system.base, system.cls, system.ratio
    elif isinstance(system, PLPath):
        path, cls, ratio = system, GENERALIZED, None
    else:
        raise TypeError(f"cannot emit {type(system).__name__}")
    doc = {"n": path.n, "class": cls.kind}
    if cls.kind == "rigid":
        doc["mesh"] = format_rational(cls.mesh)
    if ratio is not None:
        doc["self_similar_ratio"] = format_rational(ratio)
    doc["breakpoints"] = [
        {"q": format_rational(q), "value": [format_rational(x) for x in v]}
        for q, v in zip(path.breakpoints, path.values)
    ]
    return _dump(doc)


def parse_system(document: str):
    """Parse a system document into a PLPath or a SelfSimilarSystem."""
    doc = _load(document)
    if not isinstance(doc, dict):
        raise ParseError("a system document must be a JSON object", "<root>")
    n = _count(_field(doc, "n", ""), "n", 2)
    kind = doc.get("class", "generalized")
    if kind == "rigid":
        mesh = _rational(_field(doc, "mesh", ""), "mesh")
        if mesh <= 0:
            raise ParseError(f"mesh must be positive, got {mesh}", "mesh")
        cls = SystemClass.rigid(mesh)
    elif kind in ("exact", "generalized"):
        cls = EXACT if kind == "exact" else GENERALIZED
    else:
        raise ParseError(f"unknown class {kind!r}", "class")
    points = _list(_field(doc, "breakpoints", ""), "breakpoints")
    if len(points) < 2:
        raise ParseError("need at least two breakpoints", "breakpoints")
    qs, vs = [], []
    for i, item in enumerate(points):
        where = f"breakpoints[{i}]"
        if not isinstance(item, dict):
            raise ParseError("expected an object with 'q' and 'value'", where)
        q = _rational(_field(item, "q", where), where + ".q")
        value = _list(_field(item, "value", where), where + ".value")
        if len(value) != n:
            raise ParseError(f"expected {n} components, got {len(value)}", where + ".value")
        if qs and q <= qs[-1]:
            raise ParseError(f"breakpoint {q} does not exceed {qs[-1]}", where + ".q")
        qs.append(q)
        vs.append(tuple(_rational(x, f"{where}.value[{j}]") for j, x in enumerate(value)))
    try:
        path = PLPath(tuple(qs), tuple(vs))
        if "self_similar_ratio" in doc:
            ratio = _rational(doc["self_similar_ratio"], "self_similar_ratio")
            return SelfSimilarSystem(path, ratio, cls)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), "breakpoints") from None
    return path


def emit_map(T: LinearMap) -> str:
    return _dump({"m": T.m, "n": T.n, "rows": [[format_rational(x) for x in r] for r in T.rows]})


def parse_map(document: str) -> LinearMap:
    doc = _load(document)
    if not isinstance(doc, dict):
        raise ParseError("a map document must be a JSON object", "<root>")
    m = _count(_field(doc, "m", ""), "m", 1)
    n = _count(_field(doc, "n", ""), "n", 1)
    rows = _list(_field(doc, "rows", ""), "rows")
    if len(rows) != m:
        raise ParseError(f"expected {m} rows, got {len(rows)}", "rows")
    parsed = []
    for i, row in enumerate(rows):
        row = _list(row, f"rows[{i}]")
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", f"rows[{i}]")
        parsed.append(tuple(_rational(x, f"rows[{i}][{j}]") for j, x in enumerate(row)))
    try:
        return LinearMap(tuple(parsed))
    except ValueError as exc:
        raise ParseError(str(exc), "rows") from None
