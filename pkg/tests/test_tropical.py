from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import seeds
from tropijac.acceptance import example_curve, example_points, example_subcurve
from tropijac.errors import ValidationError
from tropijac.graph import Graph, theta_graph
from tropijac.polarization import Polarization
from tropijac.randomgen import random_curve, random_curve_divisor, random_graph, random_point, random_polarization
from tropijac.reduction import reduce_tropical
from tropijac.tropical import (CurveDivisor, CurvePoint, Refinement, TropicalCurve, beta_curve, chip_firing_divisor,
                               induced_pseudo_divisor, induced_subcurve, is_quasistable_curve, out_set,
                               specialize_curve, subcurve_from_pieces)

h = Fraction(1, 2)


def outs(Y):
    return {(o.start, o.end) for o in out_set(Y)}


def test_out_set_example():
    X = example_curve()
    q = example_points(X)
    assert outs(example_subcurve(X)) == {(q["q0"], q["p2"]), (q["q2"], q["p1"]),
                                         (q["q3"], q["p1"]), (q["q4"], q["p4"])}


def test_out_set_without_p2():
    # same curve, but p0p2p1 is one edge of length 2
    g = Graph([0, 1, 3, 4], {0: (0, 1), 2: (0, 1), 3: (0, 3), 4: (3, 1), 5: (3, 4)})
    X = TropicalCurve(g, {0: 2, 2: 2, 3: 1, 4: 1, 5: 1})
    q0, q2 = X.point(0, h), X.point(2, 1)
    Y = subcurve_from_pieces(X, [(0, 0, h), (2, 0, h), (3, 0, 1), (4, 0, h), (5, 0, Fraction(1, 4))], [q2])
    got = outs(Y)
    assert (q0, X.vertex_point(1)) in got
    assert not any(end == X.point(0, 1) for _, end in got)


def test_out_set_with_p5():
    X = example_curve()
    q = example_points(X)
    p5 = X.point(2, Fraction(3, 4))
    Y = subcurve_from_pieces(X, [(0, 0, h), (2, 0, h), (3, 0, 1), (4, 0, h), (5, 0, Fraction(1, 4))],
                             [q["q2"]], extra=[p5])
    got = outs(Y)
    assert (q["q1"], p5) in got and (q["q2"], p5) in got
    assert (q["q0"], q["p2"]) in got


def test_chip_firing_example():
    X = example_curve()
    q = example_points(X)
    F = chip_firing_divisor(X, example_subcurve(X), h)
    assert F == CurveDivisor({q["p2"]: 1, q["q0"]: -1, q["q5"]: 1, q["q2"]: -1,
                              q["p1"]: 1, q["q3"]: -1, q["q6"]: 1, q["q4"]: -1})
    assert F.degree == 0


def test_firing_edge_cases():
    X = example_curve()
    R = Refinement(X)
    assert chip_firing_divisor(X, induced_subcurve(R, R.graph.vertices), 5) == CurveDivisor()
    Y = example_subcurve(X)
    with pytest.raises(ValidationError):
        chip_firing_divisor(X, Y, 1)
    with pytest.raises(ValidationError):
        chip_firing_divisor(X, Y, 0)


def test_points_normalise_to_vertices():
    X = TropicalCurve(theta_graph(), {0: 1, 1: 2, 2: 3})
    assert X.point(1, 0) == CurvePoint.at_vertex(0) and X.point(1, 2) == CurvePoint.at_vertex(1)
    with pytest.raises(ValidationError):
        X.point(0, 2)
    with pytest.raises(ValidationError):
        TropicalCurve(theta_graph(), {0: 1, 1: 0, 2: 1})


def random_instance(seed, max_vertices=4, max_edges=5):
    r = random.Random(seed)
    g = random_graph(r, max_vertices, max_edges)
    X = random_curve(r, g)
    mu = random_polarization(r, g)
    v0 = r.choice(g.vertices)
    return r, g, X, mu, v0


@given(seeds)
def test_delta_and_beta_do_not_depend_on_the_model(seed):
    r, g, X, mu, v0 = random_instance(seed)
    S = {v for v in g.vertices if r.random() < 0.5}
    R1 = Refinement(X)
    Y1 = induced_subcurve(R1, S)
    extra = [random_point(r, X) for _ in range(3)]
    extra = [p for p in extra if not p.is_vertex]
    R2 = Refinement(X, extra)
    inner = {R2.vertex_of[p] for p in extra if set(g.ends(p.edge)) <= S}
    Y2 = induced_subcurve(R2, S | inner)
    assert Y1.delta() == Y2.delta()
    D = CurveDivisor({X.vertex_point(v): r.randint(-2, 2) for v in g.vertices})
    assert beta_curve(X, mu, D, Y1) == beta_curve(X, mu, D, Y2)


@given(seeds)
def test_quasistability_does_not_depend_on_the_model(seed):
    r, g, X, mu, v0 = random_instance(seed)
    D = random_curve_divisor(r, X, mu.degree)
    R = Refinement(X, [random_point(r, X) for _ in range(2)])
    D2 = CurveDivisor({R.to_refined(p): x for p, x in D.items()})
    mu2 = Polarization(mu.degree, dict(mu.items()))
    assert is_quasistable_curve(X, v0, mu, D) == is_quasistable_curve(R.curve, v0, mu2, D2)


def test_induced_pseudo_divisor_on_theta():
    X = TropicalCurve.unit(theta_graph())
    D = CurveDivisor({X.vertex_point(0): 1, X.point(0, h): -1})
    P = induced_pseudo_divisor(X, 0, Polarization(0), D)
    assert P.edges == frozenset({0}) and dict(P.divisor.items()) == {0: 1}
    with pytest.raises(ValidationError):
        induced_pseudo_divisor(X, 0, Polarization(0), CurveDivisor({X.vertex_point(0): 2, X.vertex_point(1): -2}))


@given(seeds)
def test_specialization_keeps_quasistability(seed):
    r, g, X, mu, v0 = random_instance(seed)
    D, _ = reduce_tropical(X, v0, mu, random_curve_divisor(r, X, mu.degree))
    edges = [e for e in g.edges if r.random() < 0.4]
    Y, s = specialize_curve(X, edges)
    p0 = s.point(X.vertex_point(v0))
    assert is_quasistable_curve(Y, p0, s.polarization(mu), s.divisor(D))
