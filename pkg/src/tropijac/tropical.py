"""Tropical curves with rational edge lengths, points, models and subcurves."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .divisor import Divisor, PseudoDivisor
from .errors import ConsistencyError, ValidationError
from .graph import Graph
from .polarization import Polarization
from .quasistability import is_quasistable


@functools.total_ordering
@dataclass(frozen=True)
class CurvePoint:
    """A model vertex, or a point at ``offset`` from the canonical end of ``edge``."""

    vertex: int | None = None
    edge: int | None = None
    offset: Fraction | None = None

    @classmethod
    def at_vertex(cls, v):
        return cls(vertex=int(v))

    @classmethod
    def on_edge(cls, e, offset):
        return cls(edge=int(e), offset=Fraction(offset))

    @property
    def is_vertex(self):
        return self.vertex is not None

    def sort_key(self):
        if self.vertex is not None:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge, self.offset)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if self.vertex is not None:
            return f"v{self.vertex}"
        return f"e{self.edge}@{self.offset}"


class CurveDivisor(Divisor):
    """Finitely supported integer function on points of a tropical curve."""

    __slots__ = ()

    def check_on(self, curve):
        for p in self.support():
            curve.check_point(p)
        return self


class TropicalCurve:
    """A model graph together with positive rational edge lengths."""

    __slots__ = ("model", "lengths")

    def __init__(self, model, lengths):
        if not isinstance(model, Graph):
            raise ValidationError("model must be a Graph")
        lens = {int(e): Fraction(x) for e, x in dict(lengths).items()}
        if set(lens) != set(model.edges):
            raise ValidationError("every model edge needs exactly one length")
        for e, x in lens.items():
            if x <= 0:
                raise ValidationError(f"edge {e} has non-positive length {x}")
        self.model = model
        self.lengths = MappingProxyType(dict(sorted(lens.items())))

    @classmethod
    def unit(cls, graph):
        return cls(graph, {e: 1 for e in graph.edges})

    def length(self, e):
        self.model.ends(e)
        return self.lengths[e]

    def point(self, e, offset):
        """The point at ``offset`` from the canonical end of e, normalised to a vertex at the ends."""
        offset = Fraction(offset)
        length = self.length(e)
        if offset < 0 or offset > length:
            raise ValidationError(f"offset {offset} outside edge {e} of length {length}")
        u, v = self.model.ends(e)
        if offset == 0:
            return CurvePoint.at_vertex(u)
        if offset == length:
            return CurvePoint.at_vertex(v)
        return CurvePoint.on_edge(e, offset)

    def vertex_point(self, v):
        self.model._check_vertex(v)
        return CurvePoint.at_vertex(v)

    def check_point(self, p):
        if p.is_vertex:
            self.model._check_vertex(p.vertex)
        else:
            length = self.length(p.edge)
            if not 0 < p.offset < length:
                raise ValidationError(f"point {p} is not interior to its edge")
        return p

    def as_point(self, p):
        if isinstance(p, CurvePoint):
            return self.check_point(p)
        return self.vertex_point(int(p))

    def genus(self):
        g = self.model.genus()
        # 2g - 2 = sum over points of (2w - 2 + valence); interior points contribute 0
        total = sum(2 * self.model.weight(v) - 2 + self.model.valence(v) for v in self.model.vertices)
        if total != 2 * g - 2:
            raise ConsistencyError("genus formula disagrees with the model genus")
        return g

    def total_length(self):
        return sum(self.lengths.values(), Fraction(0))

    def is_stable(self):
        """δ(p) + 2w(p) + legs(p) ≥ 3 at every point p with δ(p) ≤ 1 (necessarily a vertex)."""
        m = self.model
        return all(m.valence(v) + 2 * m.weight(v) + len(m.legs_at(v)) >= 3
                   for v in m.vertices if m.valence(v) <= 1)

    def stable_model(self):
        """The model without 2-valent weight-0 vertices carrying no legs (where possible)."""
        curve = self
        while True:
            m = curve.model
            smooth = [v for v in m.vertices if m.valence(v) == 2 and m.weight(v) == 0
                      and not m.legs_at(v) and m.multiplicity(v, v) == 0]
            if not smooth:
                return curve
            v = smooth[0]
            e1, e2 = m.edges_at(v)
            a, b = m.other_end(e1, v), m.other_end(e2, v)
            edges = {e: m.ends(e) for e in m.edges if e not in (e1, e2)}
            edges[e1] = (a, b)
            lengths = {e: curve.lengths[e] for e in edges}
            lengths[e1] = curve.lengths[e1] + curve.lengths[e2]
            g = Graph([u for u in m.vertices if u != v], edges,
                      {u: w for u, w in m.weights.items() if u != v}, m.legs)
            curve = TropicalCurve(g, lengths)

    def __eq__(self, other):
        return isinstance(other, TropicalCurve) and self.model == other.model and self.lengths == other.lengths

    def __hash__(self):
        return hash((self.model, tuple(self.lengths.items())))

    def __repr__(self):
        return f"TropicalCurve({self.model!r}, lengths={ {e: str(x) for e, x in self.lengths.items()} })"


def common_denominator(values):
    L = 1
    for x in values:
        L = L * Fraction(x).denominator // math.gcd(L, Fraction(x).denominator)
    return L


# curve polarizations are kept as point -> rational maps

def point_polarization(curve, mu):
    """Normalise μ (a Polarization on model vertex ids, or keyed by points) to (degree, {point: value})."""
    values = {}
    for k, x in mu.items():
        p = curve.as_point(k)
        values[p] = values.get(p, Fraction(0)) + Fraction(x)
    return mu.degree, {p: x for p, x in values.items() if x}


class Refinement:
    """A finer model of ``base`` with extra vertices at the given interior points.

    Unsplit edges and the first piece of every split edge keep their ids;
    original vertices keep theirs.  Pieces keep the orientation of the edge
    they come from.
    """

    def __init__(self, base, points=()):
        self.base = base
        m = base.model
        cuts = {}
        for p in points:
            p = base.check_point(p)
            if not p.is_vertex:
                cuts.setdefault(p.edge, set()).add(p.offset)
        next_v = max(m.vertices) + 1
        next_e = max(m.edges, default=-1) + 1
        vertex_of = {CurvePoint.at_vertex(v): v for v in m.vertices}
        new_vertices = list(m.vertices)
        edges, lengths, segment_of = {}, {}, {}
        for e in m.edges:
            u, v = m.ends(e)
            offs = sorted(cuts.get(e, ()))
            nodes = [u]
            for a in offs:
                p = CurvePoint.on_edge(e, a)
                vertex_of[p] = next_v
                new_vertices.append(next_v)
                nodes.append(next_v)
                next_v += 1
            nodes.append(v)
            bounds = [Fraction(0)] + offs + [base.lengths[e]]
            for i in range(len(nodes) - 1):
                if i == 0:
                    f = e
                else:
                    f = next_e
                    next_e += 1
                edges[f] = (nodes[i], nodes[i + 1])
                lengths[f] = bounds[i + 1] - bounds[i]
                segment_of[f] = (e, bounds[i], bounds[i + 1])
        graph = Graph(new_vertices, edges, m.weights, m.legs)
        self.curve = TropicalCurve(graph, lengths)
        self.vertex_of = MappingProxyType(vertex_of)
        self.point_of = MappingProxyType({v: p for p, v in vertex_of.items()})
        self.segment_of = MappingProxyType(segment_of)
        self._pieces = {}
        for f, (e, s, t) in sorted(segment_of.items(), key=lambda kv: (kv[1][0], kv[1][1])):
            self._pieces.setdefault(e, []).append((s, t, f))

    @property
    def graph(self):
        return self.curve.model

    def to_refined(self, p):
        """A point of the base curve as a point of the refined curve."""
        p = self.base.check_point(p)
        if p in self.vertex_of:
            return CurvePoint.at_vertex(self.vertex_of[p])
        for s, t, f in self._pieces[p.edge]:
            if s < p.offset < t:
                return CurvePoint.on_edge(f, p.offset - s)
        raise ConsistencyError(f"point {p} not located in the refinement")

    def to_base(self, q):
        q = self.curve.check_point(q)
        if q.is_vertex:
            return self.point_of[q.vertex]
        e, s, _ = self.segment_of[q.edge]
        return CurvePoint.on_edge(e, s + q.offset)

    def vertex_divisor(self, D):
        """A divisor supported on refinement vertices, as a graph divisor."""
        out = {}
        for p, x in D.items():
            if p not in self.vertex_of:
                raise ValidationError(f"point {p} is not a vertex of the refinement")
            out[self.vertex_of[p]] = x
        return Divisor(out)

    def vertex_polarization(self, degree, values):
        out = {}
        for p, x in values.items():
            if p not in self.vertex_of:
                raise ValidationError(f"point {p} is not a vertex of the refinement")
            out[self.vertex_of[p]] = x
        return Polarization(degree, out)

    def base_divisor(self, D):
        """A graph divisor on the refinement, as a divisor on the base curve."""
        return CurveDivisor({self.point_of[v]: x for v, x in D.items()})


def model_with_divisor(curve, D, mu=None, extra=()):
    """The refinement whose vertices are the model vertices plus supp μ, supp D and ``extra``."""
    pts = list(D.support())
    if mu is not None:
        pts += list(point_polarization(curve, mu)[1])
    pts += [curve.as_point(p) for p in extra]
    return Refinement(curve, pts)


def curve_model(curve, p0, mu):
    """The model Γ_X: model vertices plus supp μ and p0."""
    return model_with_divisor(curve, CurveDivisor(), mu, extra=[p0])


class Subcurve:
    """A subcurve of a refinement: a vertex set and edges with both ends in it."""

    def __init__(self, refinement, vertices, edges=None):
        g = refinement.graph
        self.refinement = refinement
        self.vertices = frozenset(vertices)
        for v in self.vertices:
            g._check_vertex(v)
        inside = frozenset(e for e in g.edges if set(g.ends(e)) <= self.vertices)
        self.edges = inside if edges is None else frozenset(edges)
        if not self.edges <= inside:
            raise ValidationError("subcurve edges must have both ends in the subcurve")

    def contains(self, p):
        q = self.refinement.to_refined(p)
        if q.is_vertex:
            return q.vertex in self.vertices
        return q.edge in self.edges

    def delta(self):
        g = self.refinement.graph
        total = 0
        for e in g.edges:
            if e in self.edges:
                continue
            for x in g.ends(e):
                if x in self.vertices:
                    total += 1
        return total

    def is_whole(self):
        g = self.refinement.graph
        return self.vertices == frozenset(g.vertices) and self.edges == frozenset(g.edges)

    def __and__(self, other):
        return Subcurve(self.refinement, self.vertices & other.vertices, self.edges & other.edges)

    def __or__(self, other):
        return Subcurve(self.refinement, self.vertices | other.vertices, self.edges | other.edges)


def induced_subcurve(refinement, vertices):
    return Subcurve(refinement, vertices)


def subcurve_from_pieces(curve, segments=(), points=(), extra=()):
    """The subcurve made of closed segments ``(edge, a, b)`` with a < b and isolated ``points``.

    The model is refined at all segment ends, the points, and ``extra``.
    """
    cut = []
    for e, a, b in segments:
        a, b = Fraction(a), Fraction(b)
        if not 0 <= a < b <= curve.length(e):
            raise ValidationError(f"bad segment ({e}, {a}, {b})")
        cut += [curve.point(e, a), curve.point(e, b)]
    pts = [curve.as_point(p) for p in points]
    R = Refinement(curve, cut + pts + [curve.as_point(p) for p in extra])
    verts, edges = set(), set()
    for p in pts:
        verts.add(R.vertex_of[p])
    for e, a, b in segments:
        a, b = Fraction(a), Fraction(b)
        for s, t, f in R._pieces[e]:
            if a <= s and t <= b:
                edges.add(f)
                verts.update(R.graph.ends(f))
    return Subcurve(R, verts, edges)


@dataclass(frozen=True)
class OutEdge:
    edge: int  # edge of the refinement
    start: CurvePoint  # end lying in Y, as a base point
    end: CurvePoint  # far end, as a base point
    length: Fraction


def out_set(Y):
    """Edges of the refinement joining V(Y) to the other vertices, oriented away from Y."""
    R = Y.refinement
    g = R.graph
    out = []
    for f in g.cut(Y.vertices):
        u, v = g.ends(f)
        a, b = (u, v) if u in Y.vertices else (v, u)
        out.append(OutEdge(f, R.point_of[a], R.point_of[b], R.curve.lengths[f]))
    return out


def chip_firing_divisor(curve, Y, ell):
    """D_{Y,ℓ}: -1 where each out-edge leaves Y, +1 at distance ℓ along it."""
    ell = Fraction(ell)
    if ell <= 0:
        raise ValidationError("firing length must be positive")
    R = Y.refinement
    if R.base != curve:
        raise ValidationError("subcurve is not given on a refinement of this curve")
    outs = out_set(Y)
    if outs and ell > min(o.length for o in outs):
        raise ValidationError(f"firing length {ell} exceeds the shortest out-edge")
    values = {}
    g = R.graph
    for o in outs:
        e, s, t = R.segment_of[o.edge]
        if g.ends(o.edge)[0] in Y.vertices:
            target = curve.point(e, s + ell)
        else:
            target = curve.point(e, t - ell)
        values[o.start] = values.get(o.start, 0) - 1
        values[target] = values.get(target, 0) + 1
    return CurveDivisor(values)


def beta_curve(curve, mu, D, Y):
    """β_D(Y) = deg(D|_Y) - μ(Y) + δ_Y/2 for a subcurve on a refinement of ``curve``."""
    _, mu_pts = point_polarization(curve, mu)
    deg = sum(x for p, x in D.items() if Y.contains(p))
    m = sum((x for p, x in mu_pts.items() if Y.contains(p)), Fraction(0))
    return Fraction(deg) - m + Fraction(Y.delta(), 2)


def is_quasistable_curve(curve, p0, mu, D):
    """Decided on the model Γ_{X,D} whose vertices carry all of D, μ and p0."""
    p0 = curve.as_point(p0)
    degree, mu_pts = point_polarization(curve, mu)
    if D.degree != degree:
        raise ValidationError(f"divisor degree {D.degree} differs from polarization degree {degree}")
    R = model_with_divisor(curve, D, mu, extra=[p0])
    return is_quasistable(R.graph, R.vertex_of[p0], R.vertex_polarization(degree, mu_pts),
                          R.vertex_divisor(D))


def induced_pseudo_divisor(curve, p0, mu, D):
    """The pseudo-divisor on Γ_X read off a quasistable divisor.

    ℰ is the set of edges of Γ_X carrying an interior support point; that
    point must be unique on its edge and carry -1.  The pseudo-divisor lives on
    ``curve_model(curve, p0, mu).graph``.
    """
    if not is_quasistable_curve(curve, p0, mu, D):
        raise ValidationError("divisor is not quasistable")
    M = curve_model(curve, p0, mu)
    edges, values = set(), {}
    for p, x in D.items():
        q = M.to_refined(p)
        if q.is_vertex:
            values[q.vertex] = x
            continue
        if q.edge in edges:
            raise ConsistencyError(f"edge {q.edge} carries two interior points of a quasistable divisor")
        if x != -1:
            raise ConsistencyError(f"interior point {p} carries {x}, not -1")
        edges.add(q.edge)
    return PseudoDivisor(edges, Divisor(values))


class CurveSpecialization:
    """Contraction of model edges of a curve, with the induced map on points."""

    def __init__(self, curve, edges):
        self.source = curve
        graph, self.spec = curve.model.contract(edges)
        self.target = TropicalCurve(graph, {e: curve.lengths[e] for e in graph.edges})

    def point(self, p):
        p = self.source.check_point(p)
        if p.is_vertex:
            return CurvePoint.at_vertex(self.spec.vertex_map[p.vertex])
        if p.edge in self.spec.edge_map:
            return p
        return CurvePoint.at_vertex(self.spec.vertex_map[self.source.model.ends(p.edge)[0]])

    def divisor(self, D):
        out = {}
        for p, x in D.items():
            q = self.point(p)
            out[q] = out.get(q, 0) + x
        return CurveDivisor(out)

    def polarization(self, mu):
        degree, pts = point_polarization(self.source, mu)
        out = {}
        for p, x in pts.items():
            q = self.point(p)
            out[q] = out.get(q, Fraction(0)) + x
        return Polarization(degree, out)


def specialize_curve(curve, edges):
    s = CurveSpecialization(curve, edges)
    return s.target, s

