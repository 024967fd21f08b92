"""Exact integer and rational linear algebra on plain nested lists."""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import ValidationError


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if A and len(A[0]) != len(B):
        raise ValidationError("matrix dimensions do not agree")
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def determinant(M):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValidationError("determinant of a non-square matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def hermite_normal_form(M):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H = U·M``, ``U`` unimodular, and ``H`` in echelon
    form: pivots positive, entries above each pivot reduced into
    ``[0, pivot)``, zero rows last.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(map(int, row)) for row in M]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][c] != 0]
            if not rows:
                break
            p = min(rows, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            clean = True
            for i in range(r + 1, m):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                if H[i][c]:
                    clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def lattice_contains(M, b):
    """True iff b = M·x for some integer vector x (b in the column lattice of M)."""
    m = len(M)
    if len(b) != m:
        raise ValidationError("vector length does not match the matrix")
    if m == 0 or not M[0]:
        return all(x == 0 for x in b)
    H, _ = hermite_normal_form(transpose(M))
    rest = [int(x) for x in b]
    if any(Fraction(x) != r for x, r in zip(b, rest)):
        return False
    col = 0
    for row in H:
        pivot = next((j for j, x in enumerate(row) if x != 0), None)
        if pivot is None:
            break
        if any(rest[j] != 0 for j in range(col, pivot)):
            return False
        q, rem = divmod(rest[pivot], row[pivot])
        if rem:
            return False
        rest = [a - q * h for a, h in zip(rest, row)]
        col = pivot + 1
    return all(x == 0 for x in rest)


def laplacian_matrix(graph):
    """The matrix of d*d: non-loop valence on the diagonal, minus multiplicities off it."""
    vs = graph.vertices
    idx = {v: i for i, v in enumerate(vs)}
    L = [[0] * len(vs) for _ in vs]
    for e in graph.edges:
        u, v = graph.ends(e)
        if u == v:
            continue
        i, j = idx[u], idx[v]
        L[i][i] += 1
        L[j][j] += 1
        L[i][j] -= 1
        L[j][i] -= 1
    return L


def matrix_tree_count(graph):
    """Number of spanning trees, as a cofactor of the Laplacian."""
    if not graph.is_connected():
        raise ValidationError("matrix-tree count of a disconnected graph")
    L = laplacian_matrix(graph)
    return determinant([row[1:] for row in L[1:]])


class RationalSolution(NamedTuple):
    solution: list
    nullspace: list


def solve_rational(A, b):
    """Solve A·x = b exactly.

    Returns ``RationalSolution(x, basis of the nullspace)`` or ``None`` when
    the system is inconsistent.  Free variables are set to zero in ``x``.
    """
    m = len(A)
    if len(b) != m:
        raise ValidationError("right-hand side length does not match the matrix")
    n = len(A[0]) if m else 0
    R = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        piv = R[r][c]
        R[r] = [x / piv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b_ for a, b_ in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in R):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = R[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    return RationalSolution(x, basis)


def leading_minors_positive(G):
    """Positive definiteness test for a symmetric rational matrix."""
    for k in range(1, len(G) + 1):
        if _rational_det([row[:k] for row in G[:k]]) <= 0:
            return False
    return True


def _rational_det(M):
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return det
