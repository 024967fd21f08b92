"""Period lattice, Abel–Jacobi coordinates and the cell complex of quasistable divisors."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .divisor import specialize_pseudo_on_fixed_graph
from .errors import ConsistencyError, ValidationError
from .graph import spanning_trees, tree_path, _is_spanning_tree
from .linalg import leading_minors_positive, solve_rational
from .poset import build_qd_poset
from .tropical import CurveDivisor, CurvePoint, curve_model, induced_pseudo_divisor, point_polarization


class PeriodData:
    """Fundamental cycles of a spanning tree and their length-weighted Gram matrix.

    Coordinates of a functional are its values on the fundamental cycles,
    so the period lattice is G·Z^g.
    """

    def __init__(self, curve, base=None, tree=None):
        m = curve.model
        self.curve = curve
        if base is None:
            base = m.legs[0] if m.legs else m.vertices[0]
        m._check_vertex(base)
        self.base = base
        if tree is None:
            tree = spanning_trees(m)[0]
        tree = frozenset(tree)
        if not _is_spanning_tree(m, tree):
            raise ValidationError(f"{sorted(tree)} is not a spanning tree")
        self.tree = tree
        self.cycles = []
        for f in m.edges:
            if f in tree:
                continue
            a, b = m.ends(f)
            cyc = {f: 1}
            for e, s in tree_path(m, tree, b, a):
                cyc[e] = cyc.get(e, 0) + s
            self.cycles.append({e: s for e, s in cyc.items() if s})
        g = len(self.cycles)
        self.gram = [[sum((curve.lengths[e] * ci.get(e, 0) * cj.get(e, 0) for e in m.edges), Fraction(0))
                      for cj in self.cycles] for ci in self.cycles]
        if g and not leading_minors_positive(self.gram):
            raise ConsistencyError("period Gram matrix is not positive definite")
        self._paths = {}

    @property
    def genus(self):
        return len(self.cycles)

    def _vertex_chain(self, v):
        if v not in self._paths:
            chain = {}
            for e, s in tree_path(self.curve.model, self.tree, self.base, v):
                chain[e] = chain.get(e, 0) + s * self.curve.lengths[e]
            self._paths[v] = chain
        return self._paths[v]

    def chain(self, p):
        """Signed lengths along edges of the chosen path from the base point to p."""
        p = self.curve.check_point(p)
        if p.is_vertex:
            return dict(self._vertex_chain(p.vertex))
        chain = dict(self._vertex_chain(self.curve.model.ends(p.edge)[0]))
        chain[p.edge] = chain.get(p.edge, 0) + p.offset
        return chain

    def coordinates(self, p):
        chain = self.chain(p)
        return [sum((Fraction(c.get(e, 0)) * x for e, x in chain.items()), Fraction(0)) for c in self.cycles]


def abel_jacobi(curve, p0, period, D):
    """α(D): sum over the support of D of the cycle functionals integrated from p0."""
    if curve.as_point(p0) != CurvePoint.at_vertex(period.base) or period.curve != curve:
        raise ValidationError("period data were built for a different curve or base point")
    total = [Fraction(0)] * period.genus
    for p, x in D.items():
        for i, c in enumerate(period.coordinates(p)):
            total[i] += x * c
    return total


def jacobian_equivalent(curve, period, D1, D2):
    """True iff α(D1) - α(D2) lies in the period lattice."""
    if D1.degree != D2.degree:
        raise ValidationError("divisors of different degrees")
    if period.genus == 0:
        return True
    base = CurvePoint.at_vertex(period.base)
    diff = [a - b for a, b in zip(abel_jacobi(curve, base, period, D1),
                                  abel_jacobi(curve, base, period, D2))]
    sol = solve_rational(period.gram, diff)
    if sol is None or sol.nullspace:
        raise ConsistencyError("period Gram matrix is singular")
    return all(x.denominator == 1 for x in sol.solution)


@dataclass(frozen=True)
class Cell:
    index: int
    pseudo: object
    dimension: int
    sides: tuple  # ((edge, length), ...)


@dataclass(frozen=True)
class FaceMap:
    cell: int
    face: int
    edge: int
    toward: int  # vertex receiving the -1
    pinned: Fraction  # coordinate value of ``edge`` on the face: 0 or the edge length


class JacobianComplex:
    """Cells P_(ℰ,D) = ∏_{e∈ℰ} [0, ℓ(e)] indexed by quasistable pseudo-divisors of Γ_X.

    A point x of the open cell is the divisor D_0 - Σ_e p_e(x_e), where
    p_e(x_e) is at distance x_e from the canonical end of e.
    """

    def __init__(self, curve, p0, mu):
        self.curve = curve
        self.p0 = curve.as_point(p0)
        self.mu = mu
        self.model = curve_model(curve, self.p0, mu)
        degree, pts = point_polarization(curve, mu)
        g = self.model.graph
        self.graph_polarization = self.model.vertex_polarization(degree, pts)
        self.v0 = self.model.vertex_of[self.p0]
        self.poset = build_qd_poset(g, self.v0, self.graph_polarization)
        lengths = self.model.curve.lengths
        self.cells = tuple(Cell(i, p, len(p.edges), tuple((e, lengths[e]) for e in sorted(p.edges)))
                           for i, p in enumerate(self.poset.elements))
        faces = []
        for c in self.cells:
            for e in sorted(c.pseudo.edges):
                u, v = g.ends(e)
                for end, pin in ((u, Fraction(0)), (v, lengths[e])):
                    q = specialize_pseudo_on_fixed_graph(g, c.pseudo, e, end)
                    faces.append(FaceMap(c.index, self.poset.index[q], e, end, pin))
        self.faces = tuple(faces)

    def f_vector(self):
        top = max(c.dimension for c in self.cells)
        return tuple(sum(1 for c in self.cells if c.dimension == k) for k in range(top + 1))

    def euler_characteristic(self):
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def cell_divisor(self, index, coords):
        """The divisor at cell coordinates ``coords`` (edge -> value in [0, ℓ(e)])."""
        c = self.cells[index]
        if set(coords) != set(c.pseudo.edges):
            raise ValidationError("coordinates must be given for exactly the cell's edges")
        R = self.model
        values = {}
        for v, x in c.pseudo.divisor.items():
            p = R.point_of[v]
            values[p] = values.get(p, 0) + x
        for e, x in coords.items():
            x = Fraction(x)
            if not 0 <= x <= R.curve.lengths[e]:
                raise ValidationError(f"coordinate {x} outside [0, {R.curve.lengths[e]}]")
            p = R.to_base(R.curve.point(e, x))
            values[p] = values.get(p, 0) - 1
        return CurveDivisor(values)

    def locate(self, D):
        """(cell index, coordinates) of a quasistable divisor; the cell is the open one containing D."""
        pseudo = induced_pseudo_divisor(self.curve, self.p0, self.mu, D)
        index = self.poset.index.get(pseudo)
        if index is None:
            raise ConsistencyError("induced pseudo-divisor is not an element of the poset")
        coords = {}
        for p, x in D.items():
            q = self.model.to_refined(p)
            if not q.is_vertex:
                coords[q.edge] = q.offset
        return index, coords

    def to_json(self):
        from .serialize import pseudo_divisor_to_json, rat
        return {
            "f_vector": list(self.f_vector()),
            "euler_characteristic": self.euler_characteristic(),
            "cells": [{"id": c.index, "dimension": c.dimension,
                       "pseudo_divisor": pseudo_divisor_to_json(c.pseudo),
                       "sides": [{"edge": e, "length": rat(x)} for e, x in c.sides]}
                      for c in self.cells],
            "faces": [{"cell": f.cell, "face": f.face, "edge": f.edge, "toward": f.toward,
                       "pinned": rat(f.pinned)} for f in self.faces],
        }

    def to_dot(self):
        lines = ["graph Jacobian {"]
        for c in self.cells:
            lines.append(f'  c{c.index} [label="dim {c.dimension}"];')
        seen = set()
        for f in self.faces:
            key = (f.cell, f.face, f.edge, f.pinned)
            if key not in seen:
                seen.add(key)
                lines.append(f'  c{f.cell} -- c{f.face} [label="e{f.edge}={f.pinned}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_jacobian_complex(curve, p0, mu):
    return JacobianComplex(curve, p0, mu)


def f_vector(C):
    return C.f_vector()


def euler_characteristic(C):
    return C.euler_characteristic()
