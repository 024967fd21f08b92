from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import graphs, seeds
from tropijac.graph import cycle_graph, dumbbell_graph, theta_graph
from tropijac.polarization import (Polarization, PolarizationError, canonical_family, canonical_polarization,
                                   concentrated_family, deletion_polarization, mixed_family,
                                   pushforward_polarization)
from tropijac.universal import enumerate_stable_graphs


def test_values_must_sum_to_degree():
    with pytest.raises(PolarizationError):
        Polarization(1, {0: Fraction(1, 2)})
    mu = Polarization(1, {0: Fraction(1, 2), 1: "1/2"})
    assert mu[1] == Fraction(1, 2) and mu[5] == 0


def test_canonical_theta_and_dumbbell():
    assert canonical_polarization(theta_graph(), 2) == Polarization(2, {0: 1, 1: 1})
    assert canonical_polarization(dumbbell_graph(), 1) == Polarization(1, {0: Fraction(1, 2), 1: Fraction(1, 2)})


def test_canonical_genus_one():
    assert canonical_polarization(cycle_graph(3), 0) == Polarization(0)
    with pytest.raises(PolarizationError):
        canonical_polarization(cycle_graph(3), 1)


def test_deletion_polarization_degree():
    mu = deletion_polarization(theta_graph(), Polarization(0), [0])
    assert mu == Polarization(1, {0: Fraction(1, 2), 1: Fraction(1, 2)})


@pytest.mark.parametrize("family", [canonical_family(2), concentrated_family(-1), mixed_family(3, Fraction(1, 3))])
def test_families_commute_with_contraction(family):
    cat = enumerate_stable_graphs(2)
    for a in cat.arrows:
        src = cat.graphs[a.source]
        h, spec = src.contract([a.edge])
        assert pushforward_polarization(spec, family(src)) == family(h)


@given(graphs(min_betti=2), seeds)
def test_canonical_is_contraction_compatible_on_random_graphs(g, seed):
    r = random.Random(seed)
    e = r.choice(g.edges)
    h, spec = g.contract([e])
    assert pushforward_polarization(spec, canonical_polarization(g, 3)) == canonical_polarization(h, 3)
