"""The specialization poset of quasistable pseudo-divisors on a fixed graph."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .divisor import PseudoDivisor, pushforward_pseudo, specialize_pseudo_on_fixed_graph
from .errors import ConsistencyError, ValidationError
from .graph import _is_spanning_tree
from .polarization import deletion_polarization, pushforward_polarization
from .quasistability import enumerate_quasistable


class QDPoset:
    """Elements, cover pairs ``(i, j)`` meaning element i covers element j, and ranks |ℰ|."""

    def __init__(self, graph, v0, mu, elements, covers):
        self.graph = graph
        self.v0 = v0
        self.mu = mu
        self.elements = tuple(elements)
        self.index = {p: i for i, p in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ConsistencyError("duplicate poset elements")
        self.covers = tuple(sorted(set(covers)))
        self._down = {i: [] for i in range(len(self.elements))}
        self._up = {i: [] for i in range(len(self.elements))}
        for i, j in self.covers:
            self._down[i].append(j)
            self._up[j].append(i)
        self._below = None

    def __len__(self):
        return len(self.elements)

    def rank(self, i):
        return len(self.elements[i].edges)

    def covered_by(self, i):
        """Elements covered by i."""
        return tuple(self._down[i])

    def covering(self, i):
        """Elements covering i."""
        return tuple(self._up[i])

    def maximal(self):
        return [i for i in range(len(self)) if not self._up[i]]

    def minimal(self):
        return [i for i in range(len(self)) if not self._down[i]]

    def down_set(self, i):
        """All j ≤ i, including i."""
        if self._below is None:
            below = {}
            for k in sorted(range(len(self)), key=self.rank):
                s = {k}
                for j in self._down[k]:
                    s |= below[j]
                below[k] = frozenset(s)
            self._below = below
        return self._below[i]

    def leq(self, i, j):
        return i in self.down_set(j)

    def rank_counts(self):
        top = max((self.rank(i) for i in range(len(self))), default=-1)
        return tuple(sum(1 for i in range(len(self)) if self.rank(i) == r) for r in range(top + 1))

    def to_json(self):
        from .serialize import pseudo_divisor_to_json
        return {
            "elements": [dict(pseudo_divisor_to_json(p), id=i, rank=self.rank(i))
                         for i, p in enumerate(self.elements)],
            "covers": [list(c) for c in self.covers],
        }

    def to_dot(self):
        lines = ["digraph QD {", "  rankdir=BT;"]
        for i, p in enumerate(self.elements):
            vals = " ".join(str(p.divisor[v]) for v in self.graph.vertices)
            label = f"E={{{','.join(map(str, sorted(p.edges)))}}}\\n{vals}"
            lines.append(f'  n{i} [label="{label}"];')
        for i, j in self.covers:
            lines.append(f"  n{j} -> n{i};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_qd_poset(graph, v0, mu):
    elements = enumerate_quasistable(graph, v0, mu)
    index = {p: i for i, p in enumerate(elements)}
    covers = set()
    for i, p in enumerate(elements):
        for e in sorted(p.edges):
            for end in sorted(set(graph.ends(e))):
                q = specialize_pseudo_on_fixed_graph(graph, p, e, end)
                if q not in index:
                    raise ConsistencyError(f"specialization {q} of quasistable {p} is not quasistable")
                covers.add((i, index[q]))
    return QDPoset(graph, v0, mu, elements, covers)


def maximal_chain_lengths(P):
    """For each element, the set of lengths of saturated chains from it down to a minimal element."""
    lengths = {}
    for i in sorted(range(len(P)), key=P.rank):
        below = P.covered_by(i)
        lengths[i] = frozenset({0}) if not below else frozenset(1 + l for j in below for l in lengths[j])
    return lengths


def verify_ranked(P):
    """(True, b1) when every maximal chain has length b1 and tops are spanning-tree complements."""
    b1 = P.graph.betti()
    lengths = maximal_chain_lengths(P)
    all_lengths = set()
    for i in P.maximal():
        all_lengths |= lengths[i]
    ranked = all_lengths == {b1}
    for i in P.maximal():
        kept = frozenset(P.graph.edges) - P.elements[i].edges
        if not _is_spanning_tree(P.graph, kept):
            ranked = False
    for i, j in P.covers:
        if P.rank(i) != P.rank(j) + 1:
            ranked = False
    length = max(all_lengths) if len(all_lengths) == 1 else None
    return ranked, length


def codim1_adjacency(P, tops=None, top_rank=None):
    """Graph on maximal elements: adjacent when some element of rank top-1 lies below both."""
    tops = P.maximal() if tops is None else tops
    if top_rank is None:
        top_rank = max((P.rank(i) for i in tops), default=0)
    adj = {i: set() for i in tops}
    owners = {}
    for t in tops:
        for j in P.down_set(t):
            if P.rank(j) == top_rank - 1:
                owners.setdefault(j, []).append(t)
    for ts in owners.values():
        for a in ts:
            adj[a].update(b for b in ts if b != a)
    return adj


def _connected(adj):
    nodes = list(adj)
    if not nodes:
        return True
    seen = {nodes[0]}
    queue = deque([nodes[0]])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(nodes)


def verify_connected_codim1(P):
    return _connected(codim1_adjacency(P))


@dataclass(frozen=True)
class PosetMap:
    mapping: tuple  # source index -> target index
    order_preserving: bool
    closed: bool
    surjective: bool
    injective: bool
    order_isomorphism: bool


def poset_pushforward(spec, P, Q):
    """Elementwise pushforward P → Q along ``spec`` with order-theoretic certificates.

    Closedness: whenever y ≤ f(x) in Q there is x′ ≤ x in P with f(x′) = y.
    """
    if P.graph != spec.source or Q.graph != spec.target:
        raise ValidationError("posets do not match the specialization")
    if Q.v0 != spec.vertex_map[P.v0] or Q.mu != pushforward_polarization(spec, P.mu):
        raise ValidationError("target poset is not built for the pushed-forward data")
    mapping = []
    for p in P.elements:
        q = pushforward_pseudo(spec, p)
        if q not in Q.index:
            raise ConsistencyError(f"pushforward {q} of {p} is not quasistable")
        mapping.append(Q.index[q])
    order_preserving = all(Q.leq(mapping[j], mapping[i]) for i, j in P.covers)
    closed = True
    for x in range(len(P)):
        images_below = {mapping[z] for z in P.down_set(x)}
        if not Q.down_set(mapping[x]) <= images_below:
            closed = False
            break
    surjective = set(mapping) == set(range(len(Q)))
    injective = len(set(mapping)) == len(mapping)
    iso = surjective and injective and all(
        (P.leq(a, b)) == Q.leq(mapping[a], mapping[b]) for a in range(len(P)) for b in range(len(P)))
    return PosetMap(tuple(mapping), order_preserving, closed, surjective, injective, iso)


def deletion_embedding(P, edges):
    """The map QD(Γ_ℰ) → QD(Γ), (ℰ′, D) ↦ (ℰ′ ∪ ℰ, D), for nondisconnecting ℰ.

    Returns (poset of Γ_ℰ, list of indices into P).
    """
    edges = frozenset(edges)
    deleted, connected = P.graph.delete(edges)
    if not connected:
        raise ValidationError("edge set disconnects the graph")
    mu_del = deletion_polarization(P.graph, P.mu, edges)
    small = build_qd_poset(deleted, P.v0, mu_del)
    image = []
    for p in small.elements:
        q = PseudoDivisor(p.edges | edges, p.divisor)
        if q not in P.index:
            raise ConsistencyError(f"{q} should be quasistable on the full graph")
        image.append(P.index[q])
    return small, image
