from __future__ import annotations

import itertools
from fractions import Fraction

from hypothesis import given, strategies as st

from conftest import graphs
from tropijac.graph import banana_graph, graph_from_edges, theta_graph
from tropijac.linalg import (determinant, hermite_normal_form, identity, lattice_contains, leading_minors_positive,
                             matmul, matrix_tree_count, matvec, solve_rational, transpose)

small = st.integers(min_value=-4, max_value=4)


def matrices(rows=(1, 4), cols=(1, 4)):
    return st.integers(*rows).flatmap(
        lambda m: st.integers(*cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def laplace_det(M):
    if not M:
        return 1
    return sum((-1) ** j * M[0][j] * laplace_det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(len(M)))


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_determinant_matches_laplace_expansion(M):
    assert determinant(M) == laplace_det(M)


@given(matrices())
def test_hnf_shape(M):
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H
    assert abs(determinant(U)) == 1
    last = -1
    for row in H:
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            last = len(row)
            continue
        assert piv > last
        assert row[piv] > 0
        last = piv
    for i, row in enumerate(H):
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            continue
        assert all(0 <= H[k][piv] < row[piv] for k in range(i))


def brute_contains(M, b, bound=4):
    n = len(M[0])
    return any(matvec(M, x) == list(b) for x in itertools.product(range(-bound, bound + 1), repeat=n))


@given(matrices(rows=(1, 3), cols=(1, 2)), st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_lattice_contains_finds_small_combinations(M, x):
    x = x[:len(M[0])] + [0] * (len(M[0]) - len(x))
    assert lattice_contains(M, matvec(M, x))


def test_lattice_contains_negative_cases():
    M = [[2, 0], [0, 3]]
    assert not lattice_contains(M, [1, 0])
    assert lattice_contains(M, [4, -6])
    assert not lattice_contains(M, [Fraction(1, 2), 0])
    assert lattice_contains([[1, 1], [1, 1]], [5, 5])
    assert not lattice_contains([[1, 1], [1, 1]], [5, 4])
    # brute force agreement on a coarse grid
    N = [[2, 1], [0, 3], [1, 1]]
    for b in itertools.product(range(-2, 3), repeat=3):
        assert lattice_contains(N, list(b)) == brute_contains(N, b, bound=6)


@given(matrices(), st.lists(small, min_size=4, max_size=4))
def test_solve_rational(A, x0):
    x0 = x0[:len(A[0])]
    b = matvec(A, x0)
    sol = solve_rational(A, b)
    assert sol is not None
    assert matvec(A, sol.solution) == b
    for v in sol.nullspace:
        assert all(y == 0 for y in matvec(A, v))
    # rank-nullity
    rank = len(A[0]) - len(sol.nullspace)
    assert rank <= min(len(A), len(A[0]))


def test_solve_rational_inconsistent():
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None
    sol = solve_rational([[2, 0], [0, 4]], [1, 1])
    assert sol.solution == [Fraction(1, 2), Fraction(1, 4)] and sol.nullspace == []


def test_kirchhoff_counts():
    k4 = graph_from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert matrix_tree_count(k4) == 16
    assert matrix_tree_count(theta_graph()) == 3
    assert matrix_tree_count(banana_graph(5)) == 5


@given(graphs())
def test_transpose_and_identity(g):
    from tropijac.linalg import laplacian_matrix
    L = laplacian_matrix(g)
    assert transpose(L) == L
    assert matmul(identity(len(L)), L) == L


def test_leading_minors():
    assert leading_minors_positive([[2, 1], [1, 2]])
    assert not leading_minors_positive([[1, 2], [2, 1]])
    assert leading_minors_positive([[Fraction(1, 2)]])
