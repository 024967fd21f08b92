"""Seeded random instances for property runs and the acceptance suite."""
from __future__ import annotations

import random
from fractions import Fraction

from .divisor import Divisor
from .graph import Graph
from .polarization import Polarization
from .tropical import CurveDivisor, TropicalCurve


def rng(seed=None):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_graph(r, max_vertices=6, max_edges=9, min_betti=0, loops=True, weights=False):
    """A connected multigraph: a random spanning tree plus random extra edges, leg 0 at vertex 0."""
    r = rng(r)
    n = r.randint(1, max_vertices)
    pairs = [(r.randrange(i), i) for i in range(1, n)]
    room = max_edges - len(pairs)
    extra = r.randint(min(min_betti, room), max(min(min_betti, room), room))
    for _ in range(extra):
        u, v = r.randrange(n), r.randrange(n)
        if u == v and not loops:
            continue
        pairs.append((u, v) if r.random() < 0.5 else (v, u))
    r.shuffle(pairs)
    w = {v: r.randint(0, 1) for v in range(n)} if weights else None
    return Graph(range(n), dict(enumerate(pairs)), w, {0: r.randrange(n)})


def random_rational(r, lo=-2, hi=2, denominators=(1, 2, 3, 4, 6)):
    q = r.choice(denominators)
    return Fraction(r.randint(lo * q, hi * q), q)


def random_polarization(r, graph, degree=None, denominators=(1, 2, 3, 4, 6)):
    """Random rational values, shifted at one vertex so they sum to ``degree``."""
    r = rng(r)
    if degree is None:
        degree = r.randint(-2, 3)
    vals = {v: random_rational(r, denominators=denominators) for v in graph.vertices}
    fix = r.choice(graph.vertices)
    vals[fix] += degree - sum(vals.values(), Fraction(0))
    return Polarization(degree, vals)


def random_divisor(r, graph, degree, spread=3):
    r = rng(r)
    vals = {v: r.randint(-spread, spread) for v in graph.vertices}
    fix = r.choice(graph.vertices)
    vals[fix] += degree - sum(vals.values())
    return Divisor(vals)


def random_curve(r, graph, lengths=(1, 2, 3, Fraction(1, 2), Fraction(3, 2), Fraction(2, 3), Fraction(1, 3))):
    r = rng(r)
    return TropicalCurve(graph, {e: Fraction(r.choice(lengths)) for e in graph.edges})


def random_point(r, curve, denominator=6):
    """A point at a rational offset with bounded denominator; may land on a vertex."""
    r = rng(r)
    if not curve.model.edges:
        return curve.vertex_point(r.choice(curve.model.vertices))
    e = r.choice(curve.model.edges)
    L = curve.lengths[e]
    steps = int(L * denominator)
    return curve.point(e, Fraction(r.randint(0, steps), denominator))


def random_curve_divisor(r, curve, degree, n_points=3, spread=2, denominator=6):
    r = rng(r)
    vals = {}
    for _ in range(n_points):
        p = random_point(r, curve, denominator)
        vals[p] = vals.get(p, 0) + r.randint(-spread, spread)
    v = curve.vertex_point(r.choice(curve.model.vertices))
    vals[v] = vals.get(v, 0) + degree - sum(vals.values())
    return CurveDivisor(vals)
