"""Weighted multigraphs with loops and legs, and their edge calculus.

Every edge ``e`` has two half-edges: ``2e`` anchored at ``ends(e)[0]`` and
``2e + 1`` anchored at ``ends(e)[1]``.  The end carrying the smaller half-edge
id is the canonical end of the edge; points on metric edges are measured from
it.  Ids are opaque integers and every set-valued output is sorted.
"""
from __future__ import annotations

import itertools
from collections import deque
from types import MappingProxyType
from typing import NamedTuple

from . import config
from .errors import CapExceeded, ValidationError


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class Graph:
    """Immutable connected multigraph with vertex weights and legs.

    Parameters
    ----------
    vertices : iterable of int
    edges : mapping edge id -> (u, v)
    weights : mapping vertex -> nonnegative int, default 0
    legs : mapping leg index -> vertex; indices must be 0..n-1
    allow_disconnected : only used for the output of :meth:`delete`
    """

    __slots__ = ("_vertices", "_ends", "_weights", "_legs", "_at", "_key", "_hash")

    def __init__(self, vertices, edges, weights=None, legs=None, *, allow_disconnected=False):
        vlist = [int(v) for v in vertices]
        vs = tuple(sorted(set(vlist)))
        if len(vs) != len(vlist):
            raise ValidationError("duplicate vertex ids")
        if not vs:
            raise ValidationError("a graph needs at least one vertex")
        vset = set(vs)
        ends = {}
        for e, uv in dict(edges).items():
            u, v = (int(x) for x in uv)
            if u not in vset or v not in vset:
                raise ValidationError(f"edge {e} has an end outside the vertex set")
            ends[int(e)] = (u, v)
        w = {v: 0 for v in vs}
        for v, x in dict(weights or {}).items():
            if int(v) not in vset:
                raise ValidationError(f"weight given for unknown vertex {v}")
            if int(x) < 0:
                raise ValidationError(f"negative weight at vertex {v}")
            w[int(v)] = int(x)
        lg = {int(i): int(v) for i, v in dict(legs or {}).items()}
        if sorted(lg) != list(range(len(lg))):
            raise ValidationError("leg indices must be 0..n-1")
        for i, v in lg.items():
            if v not in vset:
                raise ValidationError(f"leg {i} attached to unknown vertex {v}")
        self._vertices = vs
        self._ends = MappingProxyType(dict(sorted(ends.items())))
        self._weights = MappingProxyType(w)
        self._legs = MappingProxyType(dict(sorted(lg.items())))
        at = {v: [] for v in vs}
        for e, (u, v) in self._ends.items():
            at[u].append(e)
            if v != u:
                at[v].append(e)
        self._at = MappingProxyType({v: tuple(es) for v, es in at.items()})
        self._key = (
            vs,
            tuple(self._ends.items()),
            tuple(w.items()),
            tuple(self._legs.items()),
        )
        self._hash = hash(self._key)
        if not allow_disconnected and not self.is_connected():
            raise ValidationError("graph is not connected")

    # basic accessors

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        return tuple(self._ends)

    @property
    def weights(self):
        return self._weights

    @property
    def legs(self):
        return self._legs

    @property
    def v0(self):
        if 0 not in self._legs:
            raise ValidationError("graph has no legs, so v0 is undefined")
        return self._legs[0]

    def ends(self, e):
        try:
            return self._ends[e]
        except KeyError:
            raise ValidationError(f"unknown edge {e}") from None

    def weight(self, v):
        self._check_vertex(v)
        return self._weights[v]

    def legs_at(self, v):
        self._check_vertex(v)
        return tuple(i for i, u in self._legs.items() if u == v)

    def is_loop(self, e):
        u, v = self.ends(e)
        return u == v

    def edges_at(self, v):
        self._check_vertex(v)
        return self._at[v]

    def other_end(self, e, v):
        a, b = self.ends(e)
        if v == a:
            return b
        if v == b:
            return a
        raise ValidationError(f"vertex {v} is not an end of edge {e}")

    def half_edges(self):
        """Sorted list of (half-edge id, vertex)."""
        out = []
        for e, (u, v) in self._ends.items():
            out.append((2 * e, u))
            out.append((2 * e + 1, v))
        return out

    def multiplicity(self, u, v):
        """Number of edges joining u and v (loops at u when u == v)."""
        self._check_vertex(v)
        pair = sorted((u, v))
        return sum(1 for e in self.edges_at(u) if sorted(self._ends[e]) == pair)

    def _check_vertex(self, v):
        if v not in self._at:
            raise ValidationError(f"unknown vertex {v}")

    def _edge_set(self, edges):
        if edges is None:
            return frozenset(self._ends)
        es = frozenset(edges)
        for e in es:
            if e not in self._ends:
                raise ValidationError(f"unknown edge {e}")
        return es

    def _vertex_set(self, vertices):
        vs = frozenset(vertices)
        for v in vs:
            self._check_vertex(v)
        return vs

    def __eq__(self, other):
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"Graph(vertices={list(self._vertices)}, edges={dict(self._ends)}, "
                f"weights={dict((v, w) for v, w in self._weights.items() if w)}, legs={dict(self._legs)})")

    # edge calculus

    def valence(self, v, edges=None):
        """Number of incidences of edges in ``edges`` at v; loops count twice."""
        self._check_vertex(v)
        es = self._edge_set(edges)
        total = 0
        for e in self._at[v]:
            if e in es:
                total += 2 if self._ends[e][0] == self._ends[e][1] else 1
        return total

    def cut(self, V, W=None):
        """Edges joining V minus W to W minus V (W defaults to the complement of V)."""
        V = self._vertex_set(V)
        W = frozenset(self._vertices) - V if W is None else self._vertex_set(W)
        a, b = V - W, W - V
        return tuple(e for e, (u, v) in self._ends.items()
                     if (u in a and v in b) or (u in b and v in a))

    def delta(self, V):
        return len(self.cut(V))

    def is_connected(self, edges=None):
        uf = _UnionFind(self._vertices)
        for e in self._edge_set(edges):
            uf.union(*self._ends[e])
        root = uf.find(self._vertices[0])
        return all(uf.find(v) == root for v in self._vertices)

    def betti(self):
        if not self.is_connected():
            raise ValidationError("betti number requested for a disconnected graph")
        return len(self._ends) - len(self._vertices) + 1

    def genus(self):
        return sum(self._weights.values()) + self.betti()

    def is_stable(self):
        return all(self.valence(v) + 2 * self._weights[v] + len(self.legs_at(v)) >= 3
                   for v in self._vertices)

    def is_tree(self):
        return self.is_connected() and len(self._ends) == len(self._vertices) - 1

    def is_tree_like(self):
        """True when removing all loops leaves a tree."""
        non_loops = [e for e in self._ends if not self.is_loop(e)]
        return self.is_connected() and len(non_loops) == len(self._vertices) - 1

    def loops(self):
        return tuple(e for e in self._ends if self.is_loop(e))

    # graph operations

    def contract(self, edges):
        """Contract ``edges``; returns (Γ/ℰ, specialization Γ → Γ/ℰ).

        Each merged vertex gets the smallest id of its preimage and weight
        equal to the genus of the contracted piece, so total genus is kept.
        """
        es = self._edge_set(edges)
        uf = _UnionFind(self._vertices)
        for e in es:
            uf.union(*self._ends[e])
        vmap = {v: uf.find(v) for v in self._vertices}
        new_vs = sorted(set(vmap.values()))
        piece_v = {r: 0 for r in new_vs}
        piece_e = {r: 0 for r in new_vs}
        piece_w = {r: 0 for r in new_vs}
        for v in self._vertices:
            piece_v[vmap[v]] += 1
            piece_w[vmap[v]] += self._weights[v]
        for e in es:
            piece_e[vmap[self._ends[e][0]]] += 1
        weights = {r: piece_w[r] + piece_e[r] - piece_v[r] + 1 for r in new_vs}
        new_edges = {e: (vmap[u], vmap[v]) for e, (u, v) in self._ends.items() if e not in es}
        legs = {i: vmap[v] for i, v in self._legs.items()}
        target = Graph(new_vs, new_edges, weights, legs)
        return target, Specialization(self, target, vmap, {e: e for e in new_edges})

    def delete(self, edges):
        """Remove ``edges``; returns (Γ_ℰ, whether Γ_ℰ is connected)."""
        es = self._edge_set(edges)
        kept = {e: uv for e, uv in self._ends.items() if e not in es}
        g = Graph(self._vertices, kept, self._weights, self._legs, allow_disconnected=True)
        return g, g.is_connected()

    def subdivide(self, edges):
        """Insert one weight-0 vertex in the interior of each edge of ``edges``.

        Edge e = (u, v) becomes e = (u, x) and a new edge (x, v).  New vertex
        and edge ids are assigned in increasing order of e.
        """
        es = sorted(self._edge_set(edges))
        next_v = max(self._vertices) + 1
        next_e = max(self._ends, default=-1) + 1
        new_edges = dict(self._ends)
        exceptional, halves = {}, {}
        for i, e in enumerate(es):
            u, v = self._ends[e]
            x = next_v + i
            f = next_e + i
            new_edges[e] = (u, x)
            new_edges[f] = (x, v)
            exceptional[e] = x
            halves[e] = (e, f)
        g = Graph(list(self._vertices) + list(exceptional.values()), new_edges,
                  self._weights, self._legs)
        return Subdivision(g, MappingProxyType(exceptional), MappingProxyType(halves))


class Subdivision(NamedTuple):
    graph: Graph
    exceptional: "MappingProxyType"  # subdivided edge -> new vertex
    halves: "MappingProxyType"  # subdivided edge -> (edge at canonical end, edge at other end)


class Specialization:
    """A specialization ι: Γ → Γ′.

    ``vertex_map`` sends V(Γ) onto V(Γ′); ``edge_map`` sends each edge of Γ′
    to the edge of Γ it comes from.  Edges of Γ outside the image of
    ``edge_map`` are the contracted ones.
    """

    __slots__ = ("source", "target", "vertex_map", "edge_map")

    def __init__(self, source, target, vertex_map, edge_map, check=True):
        self.source = source
        self.target = target
        self.vertex_map = MappingProxyType(dict(vertex_map))
        self.edge_map = MappingProxyType(dict(edge_map))
        if check:
            self._validate()

    @property
    def contracted(self):
        used = set(self.edge_map.values())
        return tuple(e for e in self.source.edges if e not in used)

    def _validate(self):
        src, tgt = self.source, self.target
        if set(self.vertex_map) != set(src.vertices):
            raise ValidationError("vertex map must be defined on every source vertex")
        if set(self.vertex_map.values()) != set(tgt.vertices):
            raise ValidationError("vertex map must be surjective")
        if set(self.edge_map) != set(tgt.edges):
            raise ValidationError("edge map must be defined on every target edge")
        if len(set(self.edge_map.values())) != len(self.edge_map):
            raise ValidationError("edge map must be injective")
        for e2, e in self.edge_map.items():
            a = sorted(self.vertex_map[x] for x in src.ends(e))
            if a != sorted(tgt.ends(e2)):
                raise ValidationError(f"edge {e} does not map onto edge {e2}")
        contracted = self.contracted
        for e in contracted:
            u, v = src.ends(e)
            if self.vertex_map[u] != self.vertex_map[v]:
                raise ValidationError(f"contracted edge {e} joins distinct image vertices")
        # fibres must be connected through contracted edges, with genus-preserving weights
        for v2 in tgt.vertices:
            fibre = [v for v in src.vertices if self.vertex_map[v] == v2]
            inner = [e for e in contracted if self.vertex_map[src.ends(e)[0]] == v2]
            uf = _UnionFind(fibre)
            for e in inner:
                uf.union(*src.ends(e))
            if len({uf.find(v) for v in fibre}) != 1:
                raise ValidationError(f"fibre over {v2} is not connected by contracted edges")
            g = sum(src.weight(v) for v in fibre) + len(inner) - len(fibre) + 1
            if tgt.weight(v2) != g:
                raise ValidationError(f"weight at {v2} is not the genus of its fibre")
        if set(src.legs) != set(tgt.legs):
            raise ValidationError("source and target must carry the same legs")
        for i, v in src.legs.items():
            if self.vertex_map[v] != tgt.legs[i]:
                raise ValidationError(f"leg {i} is not carried along")

    def compose(self, other):
        """The specialization ``other ∘ self`` (first self, then other)."""
        if other.source != self.target:
            raise ValidationError("specializations are not composable")
        vmap = {v: other.vertex_map[self.vertex_map[v]] for v in self.source.vertices}
        emap = {e: self.edge_map[other.edge_map[e]] for e in other.target.edges}
        return Specialization(self.source, other.target, vmap, emap)

    @classmethod
    def identity(cls, graph):
        return cls(graph, graph, {v: v for v in graph.vertices}, {e: e for e in graph.edges})

    def __repr__(self):
        return f"Specialization(contracted={list(self.contracted)}, vertex_map={dict(self.vertex_map)})"


class Orientation:
    """A choice of source and target half-edge for every edge."""

    __slots__ = ("graph", "flipped")

    def __init__(self, graph, flipped=()):
        self.graph = graph
        self.flipped = frozenset(graph._edge_set(flipped))

    def source(self, e):
        u, v = self.graph.ends(e)
        return v if e in self.flipped else u

    def target(self, e):
        u, v = self.graph.ends(e)
        return u if e in self.flipped else v


def incidence_matrix(graph, orientation=None):
    """The coboundary d as an |E| x |V| integer matrix: row e is t(e) - s(e)."""
    orientation = orientation or Orientation(graph)
    idx = {v: i for i, v in enumerate(graph.vertices)}
    rows = []
    for e in graph.edges:
        row = [0] * len(idx)
        row[idx[orientation.target(e)]] += 1
        row[idx[orientation.source(e)]] -= 1
        rows.append(row)
    return rows


# spanning trees

def _is_spanning_tree(graph, edges):
    if len(edges) != len(graph.vertices) - 1:
        return False
    uf = _UnionFind(graph.vertices)
    for e in edges:
        if not uf.union(*graph.ends(e)):
            return False
    return True


def spanning_trees(graph):
    """All spanning trees as kept-edge frozensets, in lexicographic order."""
    if not graph.is_connected():
        raise ValidationError("spanning trees of a disconnected graph")
    candidates = [e for e in graph.edges if not graph.is_loop(e)]
    k = len(graph.vertices) - 1
    return [frozenset(c) for c in itertools.combinations(candidates, k)
            if _is_spanning_tree(graph, c)]


def tree_path(graph, tree, u, v):
    """Path from u to v inside ``tree`` as a list of (edge, +1 or -1).

    The sign is +1 when the edge is walked from its canonical end.
    """
    adj = {x: [] for x in graph.vertices}
    for e in tree:
        a, b = graph.ends(e)
        adj[a].append((e, b, 1))
        adj[b].append((e, a, -1))
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for e, y, s in sorted(adj[x]):
            if y not in prev:
                prev[y] = (x, e, s)
                queue.append(y)
    if v not in prev:
        raise ValidationError(f"no path from {u} to {v} in the given tree")
    path = []
    x = v
    while prev[x] is not None:
        x0, e, s = prev[x]
        path.append((e, s))
        x = x0
    path.reverse()
    return path


def spanning_tree_path(graph, tree, other):
    """Sequence of spanning trees from ``tree`` to ``other`` by single exchanges.

    Each step adds the smallest edge e of other \\ T, then drops the smallest
    edge of the cycle in T + e that lies outside (T ∩ other) ∪ {e}.
    """
    T, target = frozenset(tree), frozenset(other)
    for t in (T, target):
        if not _is_spanning_tree(graph, t):
            raise ValidationError(f"{sorted(t)} is not a spanning tree")
    seq = [T]
    while T != target:
        common = T & target
        e = min(target - T)
        u, v = graph.ends(e)
        cycle = {f for f, _ in tree_path(graph, T, u, v)}
        drop = min(f for f in cycle if f not in common)
        T = (T - {drop}) | {e}
        seq.append(T)
    return seq


# automorphisms and canonical forms

class Automorphism(NamedTuple):
    vertex_map: dict
    edge_map: dict
    flips: frozenset  # edges whose canonical end goes to the other end of the image


def _vertex_invariant(graph, v):
    return (graph.weight(v), graph.legs_at(v), graph.valence(v), graph.multiplicity(v, v))


def automorphisms(graph):
    """The full automorphism group, acting on vertices and half-edges."""
    vs = graph.vertices
    if len(vs) > config.AUTOMORPHISM_CAP:
        raise CapExceeded(f"{len(vs)} vertices exceed the automorphism cap {config.AUTOMORPHISM_CAP}")
    inv = {v: _vertex_invariant(graph, v) for v in vs}
    classes = {}
    for e in graph.edges:
        classes.setdefault(tuple(sorted(graph.ends(e))), []).append(e)

    vertex_maps = []

    def extend(i, phi, used):
        if i == len(vs):
            vertex_maps.append(dict(phi))
            return
        v = vs[i]
        for w in vs:
            if w in used or inv[w] != inv[v]:
                continue
            if any(graph.multiplicity(v, u) != graph.multiplicity(w, phi[u]) for u in vs[:i]):
                continue
            phi[v] = w
            used.add(w)
            extend(i + 1, phi, used)
            used.discard(w)
            del phi[v]

    extend(0, {}, set())
    group = []
    for phi in vertex_maps:
        choices = []
        for (a, b), es in classes.items():
            image = classes[tuple(sorted((phi[a], phi[b])))]
            options = []
            for perm in itertools.permutations(image):
                if a == b:
                    for bits in itertools.product((False, True), repeat=len(es)):
                        options.append((dict(zip(es, perm)), {e for e, f in zip(es, bits) if f}))
                else:
                    flips = {e for e, f in zip(es, perm) if phi[graph.ends(e)[0]] != graph.ends(f)[0]}
                    options.append((dict(zip(es, perm)), flips))
            choices.append(options)
        for combo in itertools.product(*choices):
            emap, flips = {}, set()
            for m, fl in combo:
                emap.update(m)
                flips |= fl
            group.append(Automorphism(phi, emap, frozenset(flips)))
    return group


def _refine_colors(graph, vcolor, ecolor):
    color = {v: (graph.weight(v), graph.legs_at(v), vcolor(v),
                 tuple(sorted(ecolor(e) for e in graph.edges_at(v) if graph.is_loop(e))))
             for v in graph.vertices}
    rounds = 0
    while True:
        sig = {}
        for v in graph.vertices:
            nbr = sorted((color[graph.other_end(e, v)], ecolor(e))
                         for e in graph.edges_at(v) if not graph.is_loop(e))
            sig[v] = (color[v], tuple(nbr))
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in graph.vertices}
        # the base colors are folded into the rank, so comparing class counts suffices
        if rounds and len(set(new.values())) == len(set(color.values())):
            return new
        color = new
        rounds += 1


def canonical_form(graph, vertex_colors=None, edge_colors=None):
    """Isomorphism-invariant key of a (colored) legged weighted graph.

    Returns ``(key, order)`` where ``order`` lists the vertices in the
    canonical order achieving ``key``.  Two graphs with colorings have equal
    keys exactly when a color-preserving isomorphism exists.
    """
    vs = graph.vertices
    if len(vs) > config.AUTOMORPHISM_CAP:
        raise CapExceeded(f"{len(vs)} vertices exceed the canonical-form cap {config.AUTOMORPHISM_CAP}")
    vcol = (lambda v: vertex_colors.get(v, 0)) if vertex_colors else (lambda v: 0)
    ecol = (lambda e: edge_colors.get(e, 0)) if edge_colors else (lambda e: 0)
    color = _refine_colors(graph, vcol, ecol)
    blocks = {}
    for v in vs:
        blocks.setdefault(color[v], []).append(v)
    ordered_blocks = [blocks[c] for c in sorted(blocks)]
    best = None
    best_order = None
    for parts in itertools.product(*(itertools.permutations(b) for b in ordered_blocks)):
        order = [v for part in parts for v in part]
        pos = {v: i for i, v in enumerate(order)}
        vpart = tuple((graph.weight(v), graph.legs_at(v), vcol(v)) for v in order)
        epart = []
        for e in graph.edges:
            a, b = sorted((pos[x] for x in graph.ends(e)))
            epart.append((a, b, ecol(e)))
        key = (len(vs), vpart, tuple(sorted(epart)))
        if best is None or key < best:
            best, best_order = key, tuple(order)
    return best, best_order


def is_isomorphic(g1, g2):
    return canonical_form(g1)[0] == canonical_form(g2)[0]


# standard graphs

def graph_from_edges(pairs, n_vertices=None, weights=None, legs=None):
    """Graph on vertices 0..n-1 whose edge i joins pairs[i]."""
    if n_vertices is None:
        n_vertices = 1 + max((max(p) for p in pairs), default=0)
    if legs is None:
        legs = {0: 0}
    return Graph(range(n_vertices), dict(enumerate(pairs)), weights, legs)


def theta_graph():
    """Two vertices joined by three edges, leg 0 at vertex 0."""
    return graph_from_edges([(0, 1), (0, 1), (0, 1)])


def cycle_graph(n):
    if n == 1:
        return graph_from_edges([(0, 0)])
    return graph_from_edges([(i, (i + 1) % n) for i in range(n)])


def banana_graph(k):
    return graph_from_edges([(0, 1)] * k)


def dumbbell_graph():
    """Two vertices joined by a bridge, one loop at each."""
    return graph_from_edges([(0, 0), (0, 1), (1, 1)])


def path_graph(n):
    return graph_from_edges([(i, i + 1) for i in range(n - 1)], n_vertices=n)
