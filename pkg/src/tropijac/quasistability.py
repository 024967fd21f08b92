"""The β-function and exhaustive semistability / quasistability decisions.

All subset scans go through :class:`BetaTable`, which indexes the vertex
subsets of one graph by bitmask and stores 2L·β as exact integers, where L
is the common denominator of the polarization.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import check_subset_cap
from .divisor import Divisor, PseudoDivisor
from .errors import ConsistencyError, ValidationError
from .polarization import deletion_polarization, subdivision_polarization

_INT_LIMIT = 1 << 60


@dataclass(frozen=True)
class BetaReport:
    subset: frozenset
    value: Fraction
    status: str  # "violating", "tight" or "slack"


def beta(graph, mu, D, V):
    """β_D(V) = deg(D|_V) - μ(V) + δ_V/2, computed directly."""
    V = frozenset(V)
    return Fraction(D.total(V)) - mu.total(V) + Fraction(graph.delta(V), 2)


class BetaTable:
    """Subset data for β on a fixed graph and polarization."""

    def __init__(self, graph, mu):
        mu.check_on(graph)
        self.graph = graph
        self.mu = mu
        self.vertices = graph.vertices
        self.index = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        check_subset_cap(n)
        self.n = n
        self.full = (1 << n) - 1
        masks = np.arange(1 << n, dtype=np.int64)
        self.member = (masks[:, None] >> np.arange(n, dtype=np.int64)) & 1
        delta = np.zeros(1 << n, dtype=np.int64)
        for e in graph.edges:
            u, v = graph.ends(e)
            if u != v:
                delta += self.member[:, self.index[u]] ^ self.member[:, self.index[v]]
        self.delta = delta
        L = 1
        for _, x in mu.items():
            L = L * x.denominator // math.gcd(L, x.denominator)
        self.scale = 2 * L
        mu_scaled = [int(x * self.scale) for x in mu.vector(self.vertices)]
        big = max((abs(x) for x in mu_scaled), default=0) * n + L * len(graph.edges) >= _INT_LIMIT
        if big:
            self.member = self.member.astype(object)
            delta = delta.astype(object)
        self._object = big
        # 2L·β = 2L·deg(D|_V) + offset(V)
        self.offset = L * delta - self.member @ np.array(mu_scaled, dtype=object if big else np.int64)

    def mask_of(self, V):
        m = 0
        for v in V:
            m |= 1 << self.index[v]
        return m

    def subset_of(self, mask):
        return frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def scaled(self, D):
        """2L·β for every subset; D is a Divisor, a vector, or an (n, k) batch."""
        if isinstance(D, Divisor):
            D.check_on(self.graph)
            D = D.vector(self.vertices)
        arr = np.asarray(D)
        member = self.member
        if self._object or (arr.size and int(np.abs(arr).max()) * self.scale * max(self.n, 1) >= _INT_LIMIT):
            arr = arr.astype(object)
            member = member.astype(object)
        else:
            arr = arr.astype(np.int64)
        deg = member @ arr
        if arr.ndim == 1:
            return self.scale * deg + self.offset
        return self.scale * deg + self.offset[:, None]

    def values(self, D):
        return [Fraction(int(x), self.scale) for x in self.scaled(D)]

    def quasistable_mask(self, batch, v0):
        """Boolean per column of an (n, k) batch: quasistable w.r.t. v0."""
        s = self.scaled(batch)
        bit = 1 << self.index[v0]
        proper = np.arange(self.full + 1) != self.full
        with_v0 = (np.arange(self.full + 1) & bit) != 0
        bad = proper[:, None] & ((s < 0) | (with_v0[:, None] & (s <= 0)))
        return ~bad.any(axis=0)

    def dual_quasistable_mask(self, batch, v0):
        """Same decision via β(V) ≤ δ_V on nonempty proper V, strict when v0 is not in V."""
        s = self.scaled(batch)
        bound = (self.scale * self.delta)[:, None]
        idx = np.arange(self.full + 1)
        proper = (idx != self.full) & (idx != 0)
        without_v0 = (idx & (1 << self.index[v0])) == 0
        bad = proper[:, None] & ((s > bound) | (without_v0[:, None] & (s >= bound)))
        return ~bad.any(axis=0)


def _check_degree(mu, D):
    if D.degree != mu.degree:
        raise ValidationError(f"divisor degree {D.degree} differs from polarization degree {mu.degree}")


def _report(table, mask, scaled_value, status):
    return BetaReport(table.subset_of(mask), Fraction(int(scaled_value), table.scale), status)


def check_quasistable(graph, v0, mu, D, table=None):
    """None if D is (v0, μ)-quasistable, otherwise a violating BetaReport.

    Both the direct condition and the dual condition on complements are
    evaluated; disagreement raises ConsistencyError.
    """
    _check_degree(mu, D)
    graph._check_vertex(v0)
    table = table or BetaTable(graph, mu)
    vec = np.array(D.check_on(graph).vector(table.vertices)).reshape(-1, 1)
    ok = bool(table.quasistable_mask(vec, v0)[0])
    ok_dual = bool(table.dual_quasistable_mask(vec, v0)[0])
    if ok != ok_dual:
        raise ConsistencyError("quasistability and its dual characterization disagree")
    if ok:
        return None
    s = table.scaled(vec)[:, 0]
    bit = 1 << table.index[v0]
    worst = None
    for mask in range(table.full):
        val = s[mask]
        if val < 0 or (val == 0 and mask & bit):
            if worst is None or val < s[worst]:
                worst = mask
    return _report(table, worst, s[worst], "violating" if s[worst] < 0 else "tight")


def is_quasistable(graph, v0, mu, D, table=None):
    return check_quasistable(graph, v0, mu, D, table) is None


def is_semistable(graph, mu, D, table=None):
    _check_degree(mu, D)
    table = table or BetaTable(graph, mu)
    return bool((table.scaled(D) >= 0).all())


def minimal_beta_minimizer(graph, mu, D, constraint="all", v0=None, table=None):
    """Inclusion-minimal subset with minimal β, over all subsets or those containing v0.

    Returns ``(subset, β value)``.  The minimizers are closed under
    intersection; the intersection of all of them is checked to be one.
    """
    table = table or BetaTable(graph, mu)
    s = table.scaled(D)
    idx = np.arange(table.full + 1)
    if constraint == "all":
        allowed = np.ones(table.full + 1, dtype=bool)
    elif constraint == "v0":
        if v0 is None:
            raise ValidationError("constraint 'v0' needs v0")
        allowed = (idx & (1 << table.index[v0])) != 0
    else:
        raise ValidationError(f"unknown constraint {constraint!r}")
    best = min(s[allowed])
    winners = idx[allowed & (s == best)]
    inter = table.full
    for m in winners:
        inter &= int(m)
    if not allowed[inter] or s[inter] != best:
        raise ConsistencyError("intersection of β-minimizers is not a minimizer")
    return table.subset_of(inter), Fraction(int(best), table.scale)


def _route_subdivision(graph, v0, mu, P):
    sub, D = P.on_subdivision(graph)
    mu_sub = subdivision_polarization(graph, mu, P.edges)
    return is_quasistable(sub.graph, v0, mu_sub, D)


def _route_deletion(graph, v0, mu, P):
    deleted, connected = graph.delete(P.edges)
    if not connected:
        return False
    mu_del = deletion_polarization(graph, mu, P.edges)
    return is_quasistable(deleted, v0, mu_del, P.divisor)


def is_quasistable_pseudo(graph, v0, mu, P):
    """Quasistability of (ℰ, D), decided on Γ^ℰ and independently on Γ_ℰ."""
    P.check_on(graph)
    if P.degree != mu.degree:
        raise ValidationError(f"pseudo-divisor degree {P.degree} differs from polarization degree {mu.degree}")
    a = _route_subdivision(graph, v0, mu, P)
    b = _route_deletion(graph, v0, mu, P)
    if a != b:
        raise ConsistencyError(f"subdivision and deletion routes disagree on {P}")
    return a


def _box_vectors(lo, hi, total):
    """All integer vectors x with lo <= x <= hi componentwise and sum(x) == total."""
    n = len(lo)
    rows = np.zeros((1, 0), dtype=np.int64)
    partial = np.zeros(1, dtype=np.int64)
    rest_lo = [sum(lo[i:]) for i in range(n + 1)]
    rest_hi = [sum(hi[i:]) for i in range(n + 1)]
    for i in range(n):
        vals = np.arange(lo[i], hi[i] + 1, dtype=np.int64)
        if not len(vals) or not len(rows):
            return np.zeros((0, n), dtype=np.int64)
        new_partial = (partial[:, None] + vals[None, :]).ravel()
        new_rows = np.hstack([np.repeat(rows, len(vals), axis=0),
                              np.tile(vals, len(rows))[:, None]])
        keep = (new_partial + rest_lo[i + 1] <= total) & (new_partial + rest_hi[i + 1] >= total)
        rows, partial = new_rows[keep], new_partial[keep]
    return rows[partial == total]


def _singleton_box(graph, mu, vertices):
    lo, hi = [], []
    for v in vertices:
        half = Fraction(graph.delta({v}), 2)
        lo.append(math.ceil(mu[v] - half))
        hi.append(math.floor(mu[v] + half))
    return lo, hi


def quasistable_for_edges(graph, v0, mu, edges, exhaustive=False):
    """The quasistable pseudo-divisors with edge set exactly ``edges``.

    Candidates come from the singleton box on Γ^ℰ and are decided on Γ^ℰ.
    By default they are first screened on Γ_ℰ, which is much smaller; with
    ``exhaustive=True`` every candidate is decided on Γ^ℰ and both routes
    are compared.
    """
    edges = frozenset(edges)
    deleted, connected = graph.delete(edges)
    if not connected:
        return []
    vs = graph.vertices
    sub = graph.subdivide(edges)
    lo, hi = _singleton_box(sub.graph, mu, vs)
    cands = _box_vectors(lo, hi, mu.degree + len(edges))
    if not len(cands):
        return []
    mu_del = deletion_polarization(graph, mu, edges)
    del_ok = BetaTable(deleted, mu_del).quasistable_mask(cands.T, v0)
    mu_sub = subdivision_polarization(graph, mu, edges)
    sub_table = BetaTable(sub.graph, mu_sub)
    exc = np.full((len(cands), len(edges)), -1, dtype=np.int64)
    full = np.hstack([cands, exc])  # sub.graph vertices: originals, then exceptional in edge order
    if exhaustive:
        sub_ok = sub_table.quasistable_mask(full.T, v0)
        if not np.array_equal(sub_ok, del_ok):
            raise ConsistencyError(f"routes disagree for edge set {sorted(edges)}")
    else:
        sub_ok = np.zeros(len(cands), dtype=bool)
        picked = np.nonzero(del_ok)[0]
        if len(picked):
            sub_ok[picked] = sub_table.quasistable_mask(full[picked].T, v0)
        if not np.array_equal(sub_ok, del_ok):
            raise ConsistencyError(f"routes disagree for edge set {sorted(edges)}")
    out = [PseudoDivisor(edges, Divisor.from_vector(vs, row.tolist())) for row in cands[sub_ok]]
    out.sort(key=lambda p: p.divisor.vector(vs))
    return out


def enumerate_quasistable(graph, v0, mu, exhaustive=False, max_edges=None):
    """All (v0, μ)-quasistable pseudo-divisors, ordered by (|ℰ|, sorted ℰ, values).

    ``max_edges`` limits |ℰ| (0 gives only the divisors).
    """
    mu.check_on(graph)
    graph._check_vertex(v0)
    check_subset_cap(len(graph.vertices) + graph.betti())
    top = graph.betti() if max_edges is None else min(max_edges, graph.betti())
    out = []
    for k in range(top + 1):
        for edges in itertools.combinations(graph.edges, k):
            out.extend(quasistable_for_edges(graph, v0, mu, edges, exhaustive))
    return out


def tree_like_quasistable(graph, v0, mu):
    """The unique quasistable divisor on a tree-like graph, by peeling leaves.

    A leaf v ≠ v0 of the loopless tree gets ⌈μ(v) - 1/2⌉, is merged into its
    neighbour (adding its polarization there), and the rest is solved
    recursively; the last remaining vertex is v0.
    """
    if not graph.is_tree_like():
        raise ValidationError("graph is not tree-like")
    mu.check_on(graph)
    adj = {v: set() for v in graph.vertices}
    for e in graph.edges:
        u, v = graph.ends(e)
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    cur = {v: mu[v] for v in graph.vertices}
    alive = set(graph.vertices)
    peeled = []
    while len(alive) > 1:
        leaf = min(v for v in alive if v != v0 and len(adj[v]) == 1)
        (u,) = adj[leaf]
        a = math.ceil(cur[leaf] - Fraction(1, 2))
        peeled.append((leaf, u, a))
        cur[u] += cur[leaf]
        adj[u].discard(leaf)
        alive.discard(leaf)
    values = {v0: mu.degree}
    for leaf, u, a in reversed(peeled):
        values[leaf] = a
        values[u] -= a
    return Divisor(values)


def spanning_complement_quasistable(graph, v0, mu, edges):
    """The unique quasistable pseudo-divisor with edge set a spanning-tree complement."""
    edges = frozenset(edges)
    deleted, connected = graph.delete(edges)
    if not connected or not deleted.is_tree():
        raise ValidationError(f"{sorted(edges)} is not the complement of a spanning tree")
    mu_del = deletion_polarization(graph, mu, edges)
    return PseudoDivisor(edges, tree_like_quasistable(deleted, v0, mu_del))
