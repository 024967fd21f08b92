"""JSON encoding of graphs, curves, divisors and polarizations.

Rationals are written as "p/q" strings (integers as "p"), never as floats.
Parsers raise ValidationError with a JSON-path style location.
"""
from __future__ import annotations

from fractions import Fraction

from .divisor import Divisor, PseudoDivisor
from .errors import ValidationError
from .graph import Graph
from .polarization import Polarization
from .tropical import CurveDivisor, CurvePoint, TropicalCurve


def rat(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(s, where="$"):
    if isinstance(s, bool) or isinstance(s, float):
        raise ValidationError(f"{where}: rationals must be integers or 'p/q' strings, got {s!r}")
    try:
        return Fraction(s)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValidationError(f"{where}: cannot parse rational {s!r}") from None


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValidationError(f"{where}: expected an integer, got {x!r}")
    return x


def _get(obj, key, where):
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object")
    if key not in obj:
        raise ValidationError(f"{where}: missing key {key!r}")
    return obj[key]


def _list(obj, key, where, default=None):
    if default is not None and isinstance(obj, dict) and key not in obj:
        return default
    val = _get(obj, key, where)
    if not isinstance(val, list):
        raise ValidationError(f"{where}.{key}: expected a list")
    return val


# graphs

def graph_to_json(graph):
    return {
        "vertices": [{"id": v, "weight": graph.weight(v)} for v in graph.vertices],
        "edges": [{"id": e, "ends": list(graph.ends(e))} for e in graph.edges],
        "legs": [{"index": i, "vertex": v} for i, v in graph.legs.items()],
    }


def graph_from_json(obj, where="$"):
    vertices, weights = [], {}
    for i, item in enumerate(_list(obj, "vertices", where)):
        w = f"{where}.vertices[{i}]"
        v = _int(_get(item, "id", w), w + ".id")
        vertices.append(v)
        weights[v] = _int(item.get("weight", 0), w + ".weight")
    edges = {}
    for i, item in enumerate(_list(obj, "edges", where)):
        w = f"{where}.edges[{i}]"
        e = _int(_get(item, "id", w), w + ".id")
        ends = _get(item, "ends", w)
        if not isinstance(ends, list) or len(ends) != 2:
            raise ValidationError(f"{w}.ends: expected two vertex ids")
        if e in edges:
            raise ValidationError(f"{w}.id: duplicate edge id {e}")
        edges[e] = (_int(ends[0], w + ".ends[0]"), _int(ends[1], w + ".ends[1]"))
    legs = {}
    for i, item in enumerate(_list(obj, "legs", where, default=[])):
        w = f"{where}.legs[{i}]"
        legs[_int(_get(item, "index", w), w + ".index")] = _int(_get(item, "vertex", w), w + ".vertex")
    if sorted(legs) != list(range(len(legs))):
        raise ValidationError(f"{where}.legs: leg indices must be 0..n-1")
    try:
        return Graph(vertices, edges, weights, legs)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


# divisors

def divisor_to_json(D):
    return {"values": [{"vertex": v, "value": x} for v, x in D.items()]}


def divisor_from_json(obj, where="$"):
    out = {}
    for i, item in enumerate(_list(obj, "values", where)):
        w = f"{where}.values[{i}]"
        v = _int(_get(item, "vertex", w), w + ".vertex")
        out[v] = out.get(v, 0) + _int(_get(item, "value", w), w + ".value")
    return Divisor(out)


def pseudo_divisor_to_json(P):
    return {"edges": sorted(P.edges), "divisor": divisor_to_json(P.divisor)}


def pseudo_divisor_from_json(obj, where="$"):
    edges = [_int(e, f"{where}.edges[{i}]") for i, e in enumerate(_list(obj, "edges", where, default=[]))]
    return PseudoDivisor(edges, divisor_from_json(_get(obj, "divisor", where), where + ".divisor"))


def polarization_to_json(mu):
    return {"degree": mu.degree, "values": [{"vertex": v, "value": rat(x)} for v, x in mu.items()]}


def polarization_from_json(obj, where="$"):
    degree = _int(_get(obj, "degree", where), where + ".degree")
    out = {}
    for i, item in enumerate(_list(obj, "values", where)):
        w = f"{where}.values[{i}]"
        v = _int(_get(item, "vertex", w), w + ".vertex")
        out[v] = out.get(v, Fraction(0)) + parse_rat(_get(item, "value", w), w + ".value")
    try:
        return Polarization(degree, out)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


# curves

def curve_to_json(curve):
    out = graph_to_json(curve.model)
    for item in out["edges"]:
        item["length"] = rat(curve.lengths[item["id"]])
    return out


def curve_from_json(obj, where="$"):
    graph = graph_from_json(obj, where)
    lengths = {}
    for i, item in enumerate(_list(obj, "edges", where)):
        w = f"{where}.edges[{i}]"
        lengths[item["id"]] = parse_rat(item.get("length", "1"), w + ".length")
    try:
        return TropicalCurve(graph, lengths)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def point_to_json(p):
    if p.is_vertex:
        return {"vertex": p.vertex}
    return {"edge": p.edge, "offset": rat(p.offset)}


def point_from_json(obj, curve=None, where="$"):
    if isinstance(obj, dict) and "vertex" in obj:
        p = CurvePoint.at_vertex(_int(obj["vertex"], where + ".vertex"))
        if curve is not None:
            curve.vertex_point(p.vertex)
        return p
    e = _int(_get(obj, "edge", where), where + ".edge")
    off = parse_rat(_get(obj, "offset", where), where + ".offset")
    if curve is None:
        return CurvePoint.on_edge(e, off)
    try:
        return curve.point(e, off)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None


def curve_divisor_to_json(D):
    return {"points": [dict(point_to_json(p), value=x) for p, x in D.items()]}


def curve_divisor_from_json(obj, curve=None, where="$"):
    out = {}
    for i, item in enumerate(_list(obj, "points", where)):
        w = f"{where}.points[{i}]"
        p = point_from_json(item, curve, w)
        out[p] = out.get(p, 0) + _int(_get(item, "value", w), w + ".value")
    return CurveDivisor(out)


def curve_polarization_to_json(mu):
    return {"degree": mu.degree, "points": [dict(point_to_json(p) if isinstance(p, CurvePoint)
                                                 else {"vertex": p}, value=rat(x)) for p, x in mu.items()]}


def curve_polarization_from_json(obj, curve=None, where="$"):
    degree = _int(_get(obj, "degree", where), where + ".degree")
    out = {}
    for i, item in enumerate(_list(obj, "points", where)):
        w = f"{where}.points[{i}]"
        p = point_from_json(item, curve, w)
        out[p] = out.get(p, Fraction(0)) + parse_rat(_get(item, "value", w), w + ".value")
    try:
        return Polarization(degree, out)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None
