from __future__ import annotations

import random

import pytest
from hypothesis import given

from conftest import graphs, seeds
from tropijac.divisor import (Divisor, PseudoDivisor, equivalent, is_principal, principal_divisor,
                              pushforward_divisor, pushforward_pseudo, specialize_pseudo_on_fixed_graph)
from tropijac.errors import ValidationError
from tropijac.graph import cycle_graph, theta_graph
from tropijac.randomgen import random_divisor


def test_divisor_basics():
    D = Divisor({0: 2, 1: 0, 3: -1})
    assert D.degree == 1 and D.support() == (0, 3) and D[7] == 0
    assert (D - D) == Divisor() and -D == Divisor({0: -2, 3: 1})
    with pytest.raises(ValidationError):
        Divisor({0: 0.5})
    with pytest.raises(ValidationError):
        Divisor({9: 1}).check_on(theta_graph())


@given(graphs(), seeds)
def test_principal_divisors_are_principal(g, seed):
    r = random.Random(seed)
    f = {v: r.randint(-3, 3) for v in g.vertices}
    D = principal_divisor(g, f)
    assert D.degree == 0 and is_principal(g, D)
    E = random_divisor(r, g, 2)
    assert equivalent(g, E + D, E)


def test_non_principal_on_cycle():
    # the Jacobian of a 3-cycle is Z/3: v1 - v0 has order 3
    g = cycle_graph(3)
    D = Divisor({1: 1, 0: -1})
    assert not is_principal(g, D)
    assert not is_principal(g, D + D)
    assert is_principal(g, D + D + D)
    assert not is_principal(g, Divisor({0: 1}))


def test_pushforward_sums_fibres():
    g = theta_graph()
    h, spec = g.contract([0])
    assert pushforward_divisor(spec, Divisor({0: 2, 1: -5})) == Divisor({0: -3})


@given(graphs(min_betti=1), seeds)
def test_pseudo_round_trip_through_subdivision(g, seed):
    r = random.Random(seed)
    edges = r.sample(g.edges, r.randint(0, len(g.edges)))
    P = PseudoDivisor(edges, random_divisor(r, g, 1))
    sub, D = P.on_subdivision(g)
    assert D.degree == P.degree
    assert PseudoDivisor.from_subdivision(g, edges, D) == P


def test_from_subdivision_needs_minus_one():
    g = theta_graph()
    sub = g.subdivide([0])
    with pytest.raises(ValidationError):
        PseudoDivisor.from_subdivision(g, [0], Divisor({sub.exceptional[0]: 0}))


def test_specialize_moves_minus_one():
    P = PseudoDivisor({0, 1}, Divisor({0: 1, 1: 1}))
    Q = specialize_pseudo_on_fixed_graph(theta_graph(), P, 0, 1)
    assert Q == PseudoDivisor({1}, Divisor({0: 1}))
    assert Q.degree == P.degree
    with pytest.raises(ValidationError):
        specialize_pseudo_on_fixed_graph(theta_graph(), P, 2, 1)


def test_pseudo_pushforward_contracted_edge():
    g = theta_graph()
    h, spec = g.contract([0])
    P = PseudoDivisor({0, 1}, Divisor({0: 1, 1: 1}))
    Q = pushforward_pseudo(spec, P)
    assert Q.degree == P.degree
    assert Q.edges == frozenset(e2 for e2, e in spec.edge_map.items() if e == 1)
    assert Q.divisor == Divisor({0: 1})
