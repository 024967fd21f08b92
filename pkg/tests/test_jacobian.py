from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import seeds
from tropijac.errors import ValidationError
from tropijac.graph import path_graph, spanning_trees, theta_graph
from tropijac.jacobian import JacobianComplex, PeriodData, jacobian_equivalent
from tropijac.linalg import _rational_det
from tropijac.polarization import Polarization
from tropijac.randomgen import random_curve, random_curve_divisor, random_graph, random_polarization
from tropijac.reduction import reduce_tropical
from tropijac.tropical import TropicalCurve, is_quasistable_curve


def instance(seed, min_betti=0):
    r = random.Random(seed)
    g = random_graph(r, max_vertices=4, max_edges=5, min_betti=min_betti)
    X = random_curve(r, g)
    return r, X, random_polarization(r, g), r.choice(g.vertices)


def test_theta_complex():
    J = JacobianComplex(TropicalCurve.unit(theta_graph()), 0, Polarization(0))
    assert J.f_vector() == (3, 6, 3) and J.euler_characteristic() == 0
    assert len(J.faces) == 3 * 4 + 6 * 2
    doc = J.to_json()
    assert doc["f_vector"] == [3, 6, 3] and len(doc["cells"]) == 12
    assert J.to_dot().count("--") == len(J.faces)


def test_tree_is_a_point():
    J = JacobianComplex(TropicalCurve.unit(path_graph(3)), 0, Polarization(1, {2: 1}))
    assert J.f_vector() == (1,) and J.euler_characteristic() == 1


@given(seeds)
def test_euler_characteristic_and_faces(seed):
    r, X, mu, v0 = instance(seed, min_betti=1)
    J = JacobianComplex(X, v0, mu)
    if X.genus() >= 1:
        assert J.euler_characteristic() == 0
    for c in J.cells:
        assert sum(1 for f in J.faces if f.cell == c.index) == 2 * c.dimension


@given(seeds)
def test_volume_is_the_period_determinant(seed):
    # Σ over top cells of ∏ side lengths = det of the period Gram matrix
    r, X, mu, v0 = instance(seed)
    J = JacobianComplex(X, v0, mu)
    g = X.model.betti()
    vol = Fraction(0)
    for c in J.cells:
        if c.dimension == g:
            side = Fraction(1)
            for _, x in c.sides:
                side *= x
            vol += side
    gram = PeriodData(X, v0).gram
    assert vol == (_rational_det(gram) if gram else 1)


@given(seeds)
def test_faces_pin_coordinates(seed):
    r, X, mu, v0 = instance(seed, min_betti=1)
    J = JacobianComplex(X, v0, mu)
    lengths = J.model.curve.lengths
    for f in J.faces[:12]:
        c = J.cells[f.cell]
        coords = {e: lengths[e] * Fraction(r.randint(1, 3), 4) for e in c.pseudo.edges if e != f.edge}
        on_face = J.cell_divisor(f.face, coords)
        coords[f.edge] = f.pinned
        assert J.cell_divisor(f.cell, coords) == on_face


@given(seeds)
def test_cells_locate_round_trip(seed):
    r, X, mu, v0 = instance(seed)
    J = JacobianComplex(X, v0, mu)
    c = r.choice(J.cells)
    lengths = J.model.curve.lengths
    coords = {e: lengths[e] * Fraction(r.randint(1, 5), 6) for e in c.pseudo.edges}
    D = J.cell_divisor(c.index, coords)
    assert is_quasistable_curve(X, v0, mu, D)
    assert J.locate(D) == (c.index, coords)


def test_cell_divisor_validation():
    J = JacobianComplex(TropicalCurve.unit(theta_graph()), 0, Polarization(0))
    top = next(c for c in J.cells if c.dimension == 2)
    with pytest.raises(ValidationError):
        J.cell_divisor(top.index, {})
    with pytest.raises(ValidationError):
        J.cell_divisor(top.index, {e: 2 for e in top.pseudo.edges})


@given(seeds)
def test_equivalence_does_not_depend_on_tree_or_base(seed):
    r, X, mu, v0 = instance(seed, min_betti=1)
    g = X.model
    D1 = random_curve_divisor(r, X, 0)
    D2 = random_curve_divisor(r, X, 0)
    D3, _ = reduce_tropical(X, v0, Polarization(0), D1)
    trees = spanning_trees(g)
    datas = [PeriodData(X, b, t) for b in (g.vertices[0], g.vertices[-1]) for t in (trees[0], trees[-1])]
    assert len({jacobian_equivalent(X, pd, D1, D2) for pd in datas}) == 1
    assert all(jacobian_equivalent(X, pd, D1, D3) for pd in datas)
