from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import polarized_graphs, seeds
from tropijac.divisor import Divisor, PseudoDivisor
from tropijac.errors import ValidationError
from tropijac.graph import cycle_graph, path_graph, spanning_trees, theta_graph
from tropijac.linalg import matrix_tree_count
from tropijac.polarization import Polarization
from tropijac.quasistability import (beta, check_quasistable, enumerate_quasistable, is_quasistable,
                                     is_quasistable_pseudo, is_semistable, minimal_beta_minimizer,
                                     spanning_complement_quasistable, tree_like_quasistable)
from tropijac.randomgen import random_divisor

ZERO = Polarization(0)


def brute_quasistable(g, v0, mu, D):
    vs = g.vertices
    for k in range(len(vs)):
        for V in itertools.combinations(vs, k):
            b = beta(g, mu, D, V)
            if b < 0 or (b == 0 and v0 in V):
                return False
    return True


def test_beta_on_theta():
    g = theta_graph()
    assert beta(g, ZERO, Divisor({0: 1, 1: -1}), {1}) == Fraction(1, 2)
    assert is_quasistable(g, 0, ZERO, Divisor({0: 1, 1: -1}))
    rep = check_quasistable(g, 0, ZERO, Divisor({0: 2, 1: -2}))
    assert rep.subset == frozenset({1}) and rep.value == Fraction(-1, 2) and rep.status == "violating"
    assert minimal_beta_minimizer(g, ZERO, Divisor({0: 3, 1: -3})) == (frozenset({1}), Fraction(-3, 2))


def test_tight_subset_containing_v0():
    # one edge, μ = (1/2, -1/2): D = 0 is semistable but tight on {v0}
    g = path_graph(2)
    mu = Polarization(0, {0: Fraction(1, 2), 1: Fraction(-1, 2)})
    rep = check_quasistable(g, 0, mu, Divisor())
    assert rep.status == "tight" and rep.subset == frozenset({0}) and rep.value == 0
    assert is_semistable(g, mu, Divisor())
    assert is_quasistable(g, 1, mu, Divisor())


def test_degree_mismatch():
    with pytest.raises(ValidationError):
        is_quasistable(theta_graph(), 0, ZERO, Divisor({0: 1}))


@given(polarized_graphs(max_vertices=4, max_edges=6), seeds)
def test_table_matches_direct_definition(data, seed):
    g, v0, mu = data
    D = random_divisor(random.Random(seed), g, mu.degree, spread=2)
    assert is_quasistable(g, v0, mu, D) == brute_quasistable(g, v0, mu, D)


@given(polarized_graphs(max_vertices=4, max_edges=6), seeds)
def test_minimizer_is_minimal_and_inclusion_minimal(data, seed):
    g, v0, mu = data
    D = random_divisor(random.Random(seed), g, mu.degree)
    S, val = minimal_beta_minimizer(g, mu, D)
    values = {V: beta(g, mu, D, V) for k in range(len(g.vertices) + 1)
              for V in map(frozenset, itertools.combinations(g.vertices, k))}
    assert val == min(values.values()) == beta(g, mu, D, S)
    assert all(not (V < S) for V, b in values.items() if b == val)


@given(polarized_graphs(max_vertices=4, max_edges=6))
def test_quasistable_divisors_count_spanning_trees(data):
    g, v0, mu = data
    pure = enumerate_quasistable(g, v0, mu, max_edges=0)
    assert len(pure) == matrix_tree_count(g)


@given(polarized_graphs(max_vertices=4, max_edges=6))
def test_screened_enumeration_matches_exhaustive(data):
    g, v0, mu = data
    assert enumerate_quasistable(g, v0, mu) == enumerate_quasistable(g, v0, mu, exhaustive=True)


@given(polarized_graphs(max_vertices=4, max_edges=6), seeds)
def test_pseudo_routes_agree(data, seed):
    g, v0, mu = data
    r = random.Random(seed)
    edges = r.sample(g.edges, r.randint(0, min(2, len(g.edges))))
    D = random_divisor(r, g, mu.degree + len(edges), spread=2)
    # raises ConsistencyError on disagreement
    is_quasistable_pseudo(g, v0, mu, PseudoDivisor(edges, D))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_cycles_have_2n_elements(n):
    assert len(enumerate_quasistable(cycle_graph(n), 0, ZERO)) == 2 * n


@given(polarized_graphs(max_vertices=5, max_edges=6))
def test_tree_like_peeling(data):
    g, v0, mu = data
    tree, _ = g.delete([e for e in g.edges if e not in spanning_trees(g)[0]])
    if not tree.is_tree_like():
        return
    pure = enumerate_quasistable(tree, v0, mu, max_edges=0)
    assert [p.divisor for p in pure] == [tree_like_quasistable(tree, v0, mu)]


@given(polarized_graphs(max_vertices=4, max_edges=6))
def test_spanning_tree_complements(data):
    g, v0, mu = data
    b1 = g.betti()
    tops = [p for p in enumerate_quasistable(g, v0, mu) if len(p.edges) == b1]
    assert len(tops) == len(spanning_trees(g))
    for T in spanning_trees(g):
        comp = frozenset(g.edges) - frozenset(T)
        assert [p for p in tops if p.edges == comp] == [spanning_complement_quasistable(g, v0, mu, comp)]


def test_tree_like_half_integer_rounds_toward_v0():
    # leaf polarization exactly 1/2: the leaf side must stay strictly below μ + 1/2
    g = path_graph(2)
    mu = Polarization(1, {0: Fraction(1, 2), 1: Fraction(1, 2)})
    assert tree_like_quasistable(g, 0, mu) == Divisor({0: 1})
    assert tree_like_quasistable(g, 1, mu) == Divisor({1: 1})
