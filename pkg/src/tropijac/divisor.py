"""Divisors and pseudo-divisors on graphs, linear equivalence, pushforwards."""
from __future__ import annotations

from .errors import ValidationError
from .linalg import laplacian_matrix, lattice_contains


class Divisor:
    """Finitely supported integer function on vertices; missing vertices read as 0."""

    __slots__ = ("_values", "_degree", "_hash")

    def __init__(self, values=None):
        vals = {}
        for v, x in dict(values or {}).items():
            if int(x) != x:
                raise ValidationError(f"divisor value at {v} is not an integer")
            if x:
                vals[v] = int(x)
        self._values = dict(sorted(vals.items()))
        self._degree = sum(vals.values())
        self._hash = hash(tuple(self._values.items()))

    @classmethod
    def from_vector(cls, vertices, vector):
        return cls(dict(zip(vertices, vector)))

    @property
    def degree(self):
        return self._degree

    def __getitem__(self, v):
        return self._values.get(v, 0)

    def items(self):
        return self._values.items()

    def support(self):
        return tuple(self._values)

    def vector(self, vertices):
        return [self._values.get(v, 0) for v in vertices]

    def total(self, vertices):
        return sum(self._values.get(v, 0) for v in vertices)

    def __add__(self, other):
        out = dict(self._values)
        for v, x in other.items():
            out[v] = out.get(v, 0) + x
        return type(self)(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)({v: -x for v, x in self._values.items()})

    def __eq__(self, other):
        return type(other) is type(self) and self._values == other._values

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({self._values})"

    def check_on(self, graph):
        for v in self._values:
            if v not in graph.weights:
                raise ValidationError(f"divisor is supported on unknown vertex {v}")
        return self


class PseudoDivisor:
    """A pair (ℰ, D): an edge set and a divisor on the ℰ-subdivision.

    Only the values on the original vertices are stored; every exceptional
    vertex carries -1 by definition.
    """

    __slots__ = ("edges", "divisor", "_hash")

    def __init__(self, edges, divisor):
        self.edges = frozenset(edges)
        self.divisor = divisor if isinstance(divisor, Divisor) else Divisor(divisor)
        self._hash = hash((self.edges, self.divisor))

    @property
    def degree(self):
        return self.divisor.degree - len(self.edges)

    def sort_key(self, vertices):
        return (len(self.edges), sorted(self.edges), self.divisor.vector(vertices))

    def check_on(self, graph):
        for e in self.edges:
            graph.ends(e)
        self.divisor.check_on(graph)
        return self

    def on_subdivision(self, graph):
        """Returns (Subdivision of graph along ℰ, divisor on it with -1 at exceptional vertices)."""
        self.check_on(graph)
        sub = graph.subdivide(self.edges)
        values = dict(self.divisor.items())
        for x in sub.exceptional.values():
            values[x] = -1
        return sub, Divisor(values)

    @classmethod
    def from_subdivision(cls, graph, edges, divisor):
        """Build (ℰ, D) from a divisor on ``graph.subdivide(edges)``."""
        sub = graph.subdivide(edges)
        for e, x in sub.exceptional.items():
            if divisor[x] != -1:
                raise ValidationError(f"exceptional vertex over edge {e} has value {divisor[x]}, not -1")
        return cls(edges, Divisor({v: divisor[v] for v in graph.vertices}))

    def __eq__(self, other):
        return (isinstance(other, PseudoDivisor) and self.edges == other.edges
                and self.divisor == other.divisor)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PseudoDivisor(edges={sorted(self.edges)}, divisor={dict(self.divisor.items())})"


def laplacian(graph):
    return laplacian_matrix(graph)


def is_principal(graph, D):
    D.check_on(graph)
    if D.degree != 0:
        return False
    return lattice_contains(laplacian(graph), D.vector(graph.vertices))


def equivalent(graph, D1, D2):
    return is_principal(graph, D1 - D2)


def principal_divisor(graph, f):
    """div of the integer function f on vertices, i.e. the Laplacian applied to f."""
    L = laplacian(graph)
    vs = graph.vertices
    x = [f.get(v, 0) for v in vs]
    return Divisor({v: sum(a * b for a, b in zip(row, x)) for v, row in zip(vs, L)})


def pushforward_divisor(spec, D):
    D.check_on(spec.source)
    out = {}
    for v, x in D.items():
        w = spec.vertex_map[v]
        out[w] = out.get(w, 0) + x
    return Divisor(out)


def pushforward_pseudo(spec, P):
    """ι_*(ℰ, D) = (ℰ ∩ E(Γ′), fibre sums), a contracted exceptional -1 joining its image vertex."""
    P.check_on(spec.source)
    new_edges = {e2 for e2, e in spec.edge_map.items() if e in P.edges}
    values = dict(pushforward_divisor(spec, P.divisor).items())
    for e in spec.contracted:
        if e in P.edges:
            w = spec.vertex_map[spec.source.ends(e)[0]]
            values[w] = values.get(w, 0) - 1
    return PseudoDivisor(new_edges, Divisor(values))


def specialize_pseudo_on_fixed_graph(graph, P, edge, endpoint):
    """Contract the exceptional vertex over ``edge`` toward ``endpoint``; its -1 moves there."""
    if edge not in P.edges:
        raise ValidationError(f"edge {edge} is not in the pseudo-divisor's edge set")
    if endpoint not in graph.ends(edge):
        raise ValidationError(f"vertex {endpoint} is not an end of edge {edge}")
    values = dict(P.divisor.items())
    values[endpoint] = values.get(endpoint, 0) - 1
    return PseudoDivisor(P.edges - {edge}, Divisor(values))
