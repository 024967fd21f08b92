"""Stable 1-legged graphs of small genus and the universal poset of quasistable pseudo-divisors."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .config import GENUS_CAP
from .divisor import Divisor, PseudoDivisor, pushforward_pseudo
from .errors import CapExceeded, ConsistencyError, ValidationError
from .graph import Graph, automorphisms, canonical_form
from .polarization import pushforward_polarization
from .poset import _connected, build_qd_poset, poset_pushforward


def _check_genus(g):
    if g < 0:
        raise ValidationError("genus must be nonnegative")
    if g > GENUS_CAP:
        raise CapExceeded(f"genus {g} exceeds the cap {GENUS_CAP}")


def _relabel(graph, order):
    """Copy of ``graph`` with vertices renamed 0..n-1 along ``order`` and edges renumbered."""
    pos = {v: i for i, v in enumerate(order)}
    pairs = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in (graph.ends(e) for e in graph.edges))
    weights = {pos[v]: graph.weight(v) for v in graph.vertices}
    legs = {i: pos[v] for i, v in graph.legs.items()}
    return Graph(range(len(order)), dict(enumerate(pairs)), weights, legs)


def _uncontractions(graph):
    """All stable graphs Γ′ with a single edge whose contraction gives ``graph``."""
    out = []
    new_e = max(graph.edges, default=-1) + 1
    x = max(graph.vertices) + 1
    for v in graph.vertices:
        w = graph.weight(v)
        edges = dict((e, graph.ends(e)) for e in graph.edges)
        if w >= 1:
            weights = dict(graph.weights)
            weights[v] = w - 1
            out.append(Graph(graph.vertices, {**edges, new_e: (v, v)}, weights, graph.legs))
        halves = []
        for e in graph.edges_at(v):
            if graph.is_loop(e):
                halves += [(e, 0), (e, 1)]
            else:
                halves.append((e, graph.ends(e).index(v)))
        legs_here = graph.legs_at(v)
        for side in itertools.product((0, 1), repeat=len(halves)):
            for leg_side in itertools.product((0, 1), repeat=len(legs_here)):
                for wa in range(w + 1):
                    new_edges = dict(edges)
                    for (e, h), s in zip(halves, side):
                        if s:
                            ends = list(new_edges[e])
                            ends[h] = x
                            new_edges[e] = tuple(ends)
                    new_edges[new_e] = (v, x)
                    weights = dict(graph.weights)
                    weights[v] = wa
                    weights[x] = w - wa
                    legs = dict(graph.legs)
                    for i, s in zip(legs_here, leg_side):
                        if s:
                            legs[i] = x
                    g2 = Graph(list(graph.vertices) + [x], new_edges, weights, legs)
                    if all(g2.valence(u) + 2 * g2.weight(u) + len(g2.legs_at(u)) >= 3 for u in (v, x)):
                        out.append(g2)
    return out


@dataclass(frozen=True)
class CatalogArrow:
    source: int
    target: int
    edge: int  # edge of the source representative


@dataclass
class StableGraphCatalog:
    genus: int
    graphs: list
    keys: list
    arrows: list = field(default_factory=list)

    def __len__(self):
        return len(self.graphs)

    def index_of(self, graph):
        return self.keys.index(canonical_form(graph)[0])

    def specializes_to(self):
        """Reflexive-transitive closure of the arrows: i -> set of classes reachable from i."""
        succ = {i: {a.target for a in self.arrows if a.source == i} for i in range(len(self))}
        reach = {}
        for i in sorted(range(len(self)), key=lambda i: len(self.graphs[i].edges)):
            s = {i}
            for j in succ[i]:
                s |= reach[j]
            reach[i] = s
        return reach

    def to_json(self):
        from .serialize import graph_to_json
        return {
            "genus": self.genus,
            "graphs": [dict(graph_to_json(g), id=i) for i, g in enumerate(self.graphs)],
            "arrows": [{"source": a.source, "target": a.target, "edge": a.edge} for a in self.arrows],
        }


def enumerate_stable_graphs(g):
    """Isomorphism classes of stable genus-g weighted graphs with one leg.

    Every such graph specializes to the single vertex of weight g, and
    single-edge contractions keep stability, so the classes are the closure
    of that vertex under single-edge uncontraction.
    """
    _check_genus(g)
    if g == 0:
        return StableGraphCatalog(0, [], [])
    start = Graph([0], {}, {0: g}, {0: 0})
    seen = {canonical_form(start)[0]: start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for h in _uncontractions(cur):
            key, order = canonical_form(h)
            if key not in seen:
                seen[key] = _relabel(h, order)
                queue.append(seen[key])
    items = sorted(seen.items(), key=lambda kv: (len(kv[1].edges), len(kv[1].vertices), kv[0]))
    keys = [k for k, _ in items]
    graphs = [h for _, h in items]
    for h in graphs:
        if not h.is_stable() or h.genus() != g:
            raise ConsistencyError(f"catalog graph {h} is not stable of genus {g}")
    index = {k: i for i, k in enumerate(keys)}
    arrows = []
    for i, h in enumerate(graphs):
        for e in h.edges:
            target, _ = h.contract([e])
            arrows.append(CatalogArrow(i, index[canonical_form(target)[0]], e))
    return StableGraphCatalog(g, graphs, keys, arrows)


def oracle_stable_graph_keys(g):
    """Canonical keys by generate-then-filter over bounded vertex and edge counts."""
    _check_genus(g)
    keys = set()
    if g == 0:
        return keys
    for n in range(1, 2 * g):
        pairs = list(itertools.combinations_with_replacement(range(n), 2))
        for m in range(0, 3 * g - 1):
            b1 = m - n + 1
            if b1 < 0 or b1 > g:
                continue
            for chosen in itertools.combinations_with_replacement(pairs, m):
                for weights in _compositions(g - b1, n):
                    h = Graph(range(n), dict(enumerate(chosen)), dict(enumerate(weights)), {0: 0},
                              allow_disconnected=True)
                    if h.is_connected() and h.is_stable():
                        keys.add(canonical_form(h)[0])
    return keys


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _element_key(graph, P):
    colors = {v: x for v, x in P.divisor.items()}
    ecolors = {e: 1 for e in P.edges}
    return canonical_form(graph, colors, ecolors)[0]


def _act(aut, P):
    return PseudoDivisor({aut.edge_map[e] for e in P.edges},
                         Divisor({aut.vertex_map[v]: x for v, x in P.divisor.items()}))


@dataclass(frozen=True)
class UniversalElement:
    graph_index: int
    pseudo: PseudoDivisor  # a representative on the catalog graph
    key: tuple
    dimension: int


class UniversalQD:
    """Classes of triples (Γ, ℰ, D) ordered by specialization.

    ``relations`` holds generating pairs (i, j) meaning element i specializes
    to element j; the order is their reflexive-transitive closure.
    """

    def __init__(self, catalog, family, elements, relations, posets):
        self.catalog = catalog
        self.family = family
        self.elements = tuple(elements)
        self.relations = tuple(sorted(set(relations)))
        self.posets = posets
        self.index = {(x.graph_index, x.key): i for i, x in enumerate(self.elements)}
        self._below = None

    def __len__(self):
        return len(self.elements)

    @property
    def genus(self):
        return self.catalog.genus

    def down_set(self, i):
        if self._below is None:
            down = {k: [] for k in range(len(self))}
            for a, b in self.relations:
                down[a].append(b)
            below = {}
            for k in sorted(range(len(self)), key=lambda k: self.elements[k].dimension):
                s = {k}
                for j in down[k]:
                    s |= below[j]
                below[k] = frozenset(s)
            self._below = below
        return self._below[i]

    def leq(self, i, j):
        return i in self.down_set(j)

    def maximal(self):
        above = {b for _, b in self.relations}
        return [i for i in range(len(self)) if i not in above]

    def fiber(self, graph_index):
        return [i for i, x in enumerate(self.elements) if x.graph_index == graph_index]

    def dimension_counts(self):
        top = max((x.dimension for x in self.elements), default=-1)
        return tuple(sum(1 for x in self.elements if x.dimension == k) for k in range(top + 1))

    def to_json(self):
        from .serialize import pseudo_divisor_to_json
        return {
            "genus": self.genus,
            "polarization": {"name": self.family.name, "degree": self.family.degree},
            "catalog": self.catalog.to_json(),
            "elements": [dict(pseudo_divisor_to_json(x.pseudo), id=i, graph=x.graph_index,
                              dimension=x.dimension) for i, x in enumerate(self.elements)],
            "relations": [list(r) for r in self.relations],
        }


def build_universal_qd(g, family, d=None, catalog=None):
    """The universal poset for a universal polarization ``family`` of degree d."""
    _check_genus(g)
    if d is not None and d != family.degree:
        raise ValidationError(f"family has degree {family.degree}, not {d}")
    catalog = catalog or enumerate_stable_graphs(g)
    elements, posets, local = [], [], []
    index = {}
    for c, graph in enumerate(catalog.graphs):
        mu = family(graph)
        P = build_qd_poset(graph, graph.v0, mu)
        posets.append(P)
        keys = []
        for p in P.elements:
            k = _element_key(graph, p)
            keys.append(k)
            if (c, k) not in index:
                index[(c, k)] = len(elements)
                elements.append(UniversalElement(c, p, k, len(graph.edges) + len(p.edges)))
        local.append(keys)
    relations = set()
    for c, P in enumerate(posets):
        for i, j in P.covers:
            relations.add((index[(c, local[c][i])], index[(c, local[c][j])]))
    for a in catalog.arrows:
        graph = catalog.graphs[a.source]
        target, spec = graph.contract([a.edge])
        mu_t = family(target)
        if mu_t != pushforward_polarization(spec, posets[a.source].mu):
            raise ConsistencyError(f"polarization family is not compatible with contracting edge {a.edge}")
        for i, p in enumerate(posets[a.source].elements):
            q = pushforward_pseudo(spec, p)
            k = _element_key(target, q)
            if (a.target, k) not in index:
                raise ConsistencyError(f"pushforward of {p} along edge {a.edge} is not quasistable")
            relations.add((index[(a.source, local[a.source][i])], index[(a.target, k)]))
    return UniversalQD(catalog, family, elements, relations, posets)


def burnside_orbit_count(graph, P):
    """Number of Aut(Γ)-orbits on the elements of P, by averaging fixed points."""
    group = automorphisms(graph)
    members = set(P.elements)
    fixed = 0
    for aut in group:
        for p in P.elements:
            q = _act(aut, p)
            if q not in members:
                raise ConsistencyError(f"automorphism moves {p} outside the quasistable set")
            fixed += q == p
    if fixed % len(group):
        raise ConsistencyError("fixed-point count is not divisible by the group order")
    return fixed // len(group)


@dataclass
class UniversalReport:
    genus: int
    pure_dimension: bool
    maximal_dimensions: tuple
    connected_codim1: bool
    forgetful_order_preserving: bool
    fibers_match: bool
    pushforwards_closed_surjective: bool | None
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return (self.pure_dimension and self.connected_codim1 and self.forgetful_order_preserving
                and self.fibers_match and self.pushforwards_closed_surjective is not False)


def verify_universal_theorems(U, check_pushforwards=True):
    g = U.genus
    violations = []
    top = 4 * g - 2
    maxes = U.maximal()
    dims = tuple(sorted({U.elements[i].dimension for i in maxes}))
    pure = all(U.elements[i].dimension == top for i in maxes)
    if not pure:
        violations.append(f"maximal dimensions {dims}, expected {top}")
    owners = {}
    for t in maxes:
        for j in U.down_set(t):
            if U.elements[j].dimension == top - 1:
                owners.setdefault(j, []).append(t)
    adj = {t: set() for t in maxes}
    for ts in owners.values():
        for a in ts:
            adj[a].update(b for b in ts if b != a)
    connected = _connected(adj)
    if not connected:
        violations.append("maximal elements are not connected in codimension 1")
    reach = U.catalog.specializes_to()
    forgetful = all(U.elements[b].graph_index in reach[U.elements[a].graph_index] for a, b in U.relations)
    if not forgetful:
        violations.append("forgetful map to the graph catalog is not order-preserving")
    fibers = True
    for c, graph in enumerate(U.catalog.graphs):
        if burnside_orbit_count(graph, U.posets[c]) != len(U.fiber(c)):
            fibers = False
            violations.append(f"fiber over graph {c} disagrees with the automorphism quotient")
    pushes = None
    if check_pushforwards:
        pushes = True
        for a in U.catalog.arrows:
            graph = U.catalog.graphs[a.source]
            target, spec = graph.contract([a.edge])
            Q = build_qd_poset(target, target.v0, U.family(target))
            m = poset_pushforward(spec, U.posets[a.source], Q)
            if not (m.order_preserving and m.closed and m.surjective):
                pushes = False
                violations.append(f"pushforward along edge {a.edge} of graph {a.source} fails")
    return UniversalReport(g, pure, dims, connected, forgetful, fibers, pushes, violations)
