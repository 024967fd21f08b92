"""Rational polarizations and the polarizations they induce."""
from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError


class PolarizationError(ValidationError):
    pass


class Polarization:
    """Exact rational weights on vertices summing to the integer ``degree``."""

    __slots__ = ("degree", "_values", "_hash")

    def __init__(self, degree, values=None):
        self.degree = int(degree)
        vals = {v: Fraction(x) for v, x in dict(values or {}).items()}
        vals = {v: x for v, x in sorted(vals.items()) if x}
        if sum(vals.values(), Fraction(0)) != self.degree:
            raise PolarizationError(f"values sum to {sum(vals.values(), Fraction(0))}, not {self.degree}")
        self._values = vals
        self._hash = hash((self.degree, tuple(vals.items())))

    def __getitem__(self, v):
        return self._values.get(v, Fraction(0))

    def items(self):
        return self._values.items()

    def total(self, vertices):
        return sum((self._values.get(v, Fraction(0)) for v in vertices), Fraction(0))

    def vector(self, vertices):
        return [self[v] for v in vertices]

    def check_on(self, graph):
        for v in self._values:
            if v not in graph.weights:
                raise ValidationError(f"polarization is supported on unknown vertex {v}")
        return self

    def __add__(self, other):
        vals = dict(self._values)
        for v, x in other.items():
            vals[v] = vals.get(v, 0) + x
        return Polarization(self.degree + other.degree, vals)

    def __eq__(self, other):
        return (isinstance(other, Polarization) and self.degree == other.degree
                and self._values == other._values)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        vals = {v: str(x) for v, x in self._values.items()}
        return f"Polarization(degree={self.degree}, values={vals})"


def zero_polarization():
    return Polarization(0)


def pushforward_polarization(spec, mu):
    mu.check_on(spec.source)
    out = {}
    for v, x in mu.items():
        w = spec.vertex_map[v]
        out[w] = out.get(w, 0) + x
    return Polarization(mu.degree, out)


def deletion_polarization(graph, mu, edges):
    """μ_ℰ(v) = μ(v) + val_ℰ(v)/2 on Γ_ℰ, of degree d + |ℰ|."""
    edges = frozenset(edges)
    deleted, connected = graph.delete(edges)
    if not connected:
        raise ValidationError(f"edge set {sorted(edges)} disconnects the graph")
    vals = {v: mu[v] + Fraction(graph.valence(v, edges), 2) for v in graph.vertices}
    return Polarization(mu.degree + len(edges), vals)


def subdivision_polarization(graph, mu, edges):
    """μ^ℰ: same values, zero on the exceptional vertices.  Stored values are unchanged."""
    mu.check_on(graph)
    graph.subdivide(edges)
    return Polarization(mu.degree, dict(mu.items()))


def canonical_polarization(graph, d):
    """μ(v) = d(2w(v) - 2 + val(v)) / (2g - 2).

    When 2g - 2 = 0 only d = 0 makes sense, and the zero polarization is returned.
    """
    g = graph.genus()
    if 2 * g - 2 == 0:
        if d == 0:
            return Polarization(0)
        raise PolarizationError("canonical polarization needs 2g - 2 != 0 when d != 0")
    vals = {v: Fraction(d * (2 * graph.weight(v) - 2 + graph.valence(v)), 2 * g - 2)
            for v in graph.vertices}
    return Polarization(d, vals)


def v0_concentrated_polarization(graph, d):
    return Polarization(d, {graph.v0: d})


def mixed_polarization(graph, d, t):
    """t·canonical + (1 - t)·concentrated, again of degree d."""
    t = Fraction(t)
    can = canonical_polarization(graph, d)
    conc = v0_concentrated_polarization(graph, d)
    vals = {v: t * can[v] + (1 - t) * conc[v] for v in graph.vertices}
    return Polarization(d, vals)


class UniversalPolarization:
    """A rule assigning a degree-d polarization to every stable graph.

    ``canonical_weight`` t gives the affine combination
    t·canonical + (1 - t)·concentrated.
    """

    __slots__ = ("degree", "canonical_weight", "name")

    def __init__(self, degree, canonical_weight, name=None):
        self.degree = int(degree)
        self.canonical_weight = Fraction(canonical_weight)
        self.name = name or f"mixed({self.canonical_weight})"

    def __call__(self, graph):
        if self.canonical_weight == 1:
            return canonical_polarization(graph, self.degree)
        if self.canonical_weight == 0:
            return v0_concentrated_polarization(graph, self.degree)
        return mixed_polarization(graph, self.degree, self.canonical_weight)

    def __repr__(self):
        return f"UniversalPolarization({self.name}, degree={self.degree})"


def canonical_family(d):
    return UniversalPolarization(d, 1, "canonical")


def concentrated_family(d):
    return UniversalPolarization(d, 0, "concentrated")


def mixed_family(d, t):
    return UniversalPolarization(d, t)
