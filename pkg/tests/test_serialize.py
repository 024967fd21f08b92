from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import graphs, seeds
from tropijac import serialize as ser
from tropijac.divisor import Divisor, PseudoDivisor
from tropijac.errors import ValidationError
from tropijac.randomgen import random_curve, random_curve_divisor, random_graph, random_polarization


def through_text(obj):
    return json.loads(json.dumps(obj))


@given(graphs())
def test_graph_round_trip(g):
    assert ser.graph_from_json(through_text(ser.graph_to_json(g))) == g


@given(seeds)
def test_curve_data_round_trip(seed):
    r = random.Random(seed)
    g = random_graph(r, max_vertices=4, max_edges=5)
    X = random_curve(r, g)
    Y = ser.curve_from_json(through_text(ser.curve_to_json(X)))
    assert Y.model == X.model and dict(Y.lengths) == dict(X.lengths)
    D = random_curve_divisor(r, X, 1)
    assert ser.curve_divisor_from_json(through_text(ser.curve_divisor_to_json(D)), X) == D
    mu = random_polarization(r, g)
    assert ser.polarization_from_json(through_text(ser.polarization_to_json(mu))) == mu


def test_pseudo_divisor_round_trip():
    P = PseudoDivisor({2, 0}, Divisor({0: 1, 1: -3}))
    doc = ser.pseudo_divisor_to_json(P)
    assert doc["edges"] == [0, 2]
    assert ser.pseudo_divisor_from_json(through_text(doc)) == P


def test_rationals():
    assert ser.rat(Fraction(3, 6)) == "1/2" and ser.rat(4) == "4"
    assert ser.parse_rat("-2/3") == Fraction(-2, 3) and ser.parse_rat(5) == 5
    with pytest.raises(ValidationError):
        ser.parse_rat(0.5)
    with pytest.raises(ValidationError):
        ser.parse_rat("1/0")


@pytest.mark.parametrize("doc, where", [
    ({"vertices": [{"id": 0}], "edges": [{"id": 0, "ends": [0]}]}, "$.edges[0].ends"),
    ({"vertices": [{"id": "a"}], "edges": []}, "$.vertices[0].id"),
    ({"vertices": [{"id": 0}, {"id": 1}], "edges": [{"id": 0, "ends": [0, 1], "length": 0.5}]},
     "$.edges[0].length"),
    ({"edges": []}, "missing key 'vertices'"),
])
def test_error_locations(doc, where):
    with pytest.raises(ValidationError, match=where.replace("[", r"\[").replace("$", r"\$")):
        ser.curve_from_json(doc)


def test_polarization_must_sum():
    with pytest.raises(ValidationError):
        ser.polarization_from_json({"degree": 1, "values": [{"vertex": 0, "value": "1/2"}]})


def test_points_are_checked_against_the_curve():
    X = ser.curve_from_json({"vertices": [{"id": 0}, {"id": 1}], "edges": [{"id": 0, "ends": [0, 1]}]})
    with pytest.raises(ValidationError, match=r"\$.points\[0\]"):
        ser.curve_divisor_from_json({"points": [{"edge": 0, "offset": "3/2", "value": 1}]}, X)
    D = ser.curve_divisor_from_json({"points": [{"edge": 0, "offset": "1", "value": 1}]}, X)
    assert D.support() == (X.vertex_point(1),)
