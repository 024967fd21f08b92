"""The acceptance suite: ten end-to-end checks over fixed examples and seeded random instances."""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .divisor import Divisor, PseudoDivisor, equivalent, pushforward_pseudo
from .errors import ValidationError
from .graph import cycle_graph, graph_from_edges, spanning_trees, theta_graph
from .jacobian import JacobianComplex, PeriodData, jacobian_equivalent
from .linalg import matrix_tree_count
from .polarization import (Polarization, PolarizationError, canonical_family, canonical_polarization,
                           concentrated_family, pushforward_polarization)
from .poset import build_qd_poset, poset_pushforward, verify_ranked
from .quasistability import (_route_deletion, _route_subdivision, enumerate_quasistable,
                             is_quasistable, is_quasistable_pseudo)
from .randomgen import random_curve, random_divisor, random_graph, random_polarization
from .reduction import graph_divisor_on_curve, reduce_graph, reduce_tropical
from .tropical import (CurveDivisor, CurvePoint, TropicalCurve, chip_firing_divisor, induced_pseudo_divisor,
                       induced_subcurve, model_with_divisor, out_set, subcurve_from_pieces)
from .universal import build_universal_qd, enumerate_stable_graphs, verify_universal_theorems


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    instances: int
    seconds: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail} ({self.instances} instances, {self.seconds:.2f}s)"


def _timed(number, name, fn, *args):
    t = time.perf_counter()
    passed, detail, n = fn(*args)
    return CriterionResult(number, name, passed, detail, n, time.perf_counter() - t)


# 1

def _theta_poset():
    """The expected poset of the theta graph with μ = 0, built by hand from its edges 0, 1, 2."""
    elements = set()
    covers = set()
    for a, b in itertools.combinations(range(3), 2):
        top = PseudoDivisor({a, b}, Divisor({0: 1, 1: 1}))
        elements.add(top)
        for keep in (a, b):
            for vals in ((1, 0), (0, 1)):
                covers.add((top, PseudoDivisor({keep}, Divisor(dict(enumerate(vals))))))
    for e in range(3):
        for vals, below in (((1, 0), ((1, -1), (0, 0))), ((0, 1), ((0, 0), (-1, 1)))):
            mid = PseudoDivisor({e}, Divisor(dict(enumerate(vals))))
            elements.add(mid)
            for w in below:
                bottom = PseudoDivisor((), Divisor(dict(enumerate(w))))
                elements.add(bottom)
                covers.add((mid, bottom))
    return elements, covers


def criterion_1():
    g = theta_graph()
    mu = Polarization(0)
    t = time.perf_counter()
    P = build_qd_poset(g, 0, mu)
    J = JacobianComplex(TropicalCurve.unit(g), 0, mu)
    elapsed = time.perf_counter() - t
    elements, covers = _theta_poset()
    got_covers = {(P.elements[i], P.elements[j]) for i, j in P.covers}
    ok = (len(P) == 12 and P.rank_counts() == (3, 6, 3) and set(P.elements) == elements
          and got_covers == covers and J.f_vector() == (3, 6, 3) and J.euler_characteristic() == 0
          and elapsed < 1.0)
    detail = (f"|QD|={len(P)}, ranks={P.rank_counts()}, Hasse match={got_covers == covers}, "
              f"f-vector={J.f_vector()}, chi={J.euler_characteristic()}, {elapsed:.3f}s")
    return ok, detail, 1


# 2

def criterion_2(seed=0):
    r = random.Random(seed)
    bad = []
    t = time.perf_counter()
    n_inst = 0
    for n in range(2, 9):
        g = cycle_graph(n)
        for _ in range(3):
            mu = random_polarization(r, g)
            size = len(enumerate_quasistable(g, 0, mu))
            n_inst += 1
            if size != 2 * n:
                bad.append((n, mu, size))
    elapsed = time.perf_counter() - t
    return not bad and elapsed < 5.0, f"{len(bad)} failures, {elapsed:.2f}s", n_inst


# 3

def criterion_3(seed=0, count=200):
    r = random.Random(seed)
    bad = []
    for _ in range(count):
        g = random_graph(r, max_vertices=6, max_edges=9)
        mu = random_polarization(r, g)
        v0 = r.choice(g.vertices)
        P = build_qd_poset(g, v0, mu)
        ranked, length = verify_ranked(P)
        tops = {P.elements[i].edges for i in P.maximal()}
        complements = {frozenset(g.edges) - frozenset(T) for T in spanning_trees(g)}
        ok = (ranked and length == g.betti() and tops == complements
              and len(P.maximal()) == matrix_tree_count(g) == len(complements))
        if not ok:
            bad.append(g)
    return not bad, f"{len(bad)} failures", count


# 4

def criterion_4(seed=0, count=500):
    r = random.Random(seed)
    bad = []
    for _ in range(count):
        g = random_graph(r, max_vertices=5, max_edges=7)
        mu = random_polarization(r, g)
        v0 = r.choice(g.vertices)
        D = random_divisor(r, g, mu.degree)
        E = reduce_graph(g, v0, mu, D)
        pure = [p.divisor for p in enumerate_quasistable(g, v0, mu, exhaustive=True, max_edges=0)]
        in_class = [F for F in pure if equivalent(g, F, D)]
        ok = (is_quasistable(g, v0, mu, E) and equivalent(g, E, D)
              and reduce_graph(g, v0, mu, E) == E and in_class == [E])
        if not ok:
            bad.append((g, mu, D))
    return not bad, f"{len(bad)} failures", count


# 5

def _subdivision_oracle(curve, v0, mu, D):
    """Reduce on the graph obtained by splitting every unit edge at its midpoint, then map back."""
    g = curve.model
    sub = g.subdivide(g.edges)
    point = {v: CurvePoint.at_vertex(v) for v in g.vertices}
    for e, x in sub.exceptional.items():
        point[x] = curve.point(e, Fraction(1, 2))
    E = reduce_graph(sub.graph, v0, Polarization(mu.degree, dict(mu.items())), D)
    return CurveDivisor({point[v]: x for v, x in E.items()})


def criterion_5(seed=0, count=100):
    r = random.Random(seed)
    bad = []
    for _ in range(count):
        g = random_graph(r, max_vertices=4, max_edges=5)
        mu = random_polarization(r, g)
        v0 = r.choice(g.vertices)
        D = random_divisor(r, g, mu.degree)
        X = TropicalCurve.unit(g)
        out, trace = reduce_tropical(X, v0, mu, graph_divisor_on_curve(X, D))
        oracle = _subdivision_oracle(X, v0, mu, D)
        ok = (induced_pseudo_divisor(X, v0, mu, out) == induced_pseudo_divisor(X, v0, mu, oracle)
              and out == oracle and trace.is_progressive())
        if not ok:
            bad.append((g, mu, D))
    return not bad, f"{len(bad)} failures", count


# 6

def criterion_6(seed=0, count=200):
    r = random.Random(seed)
    bad = []
    done = 0
    while done < count:
        g = random_graph(r, max_vertices=5, max_edges=7)
        mu = random_polarization(r, g)
        v0 = r.choice(g.vertices)
        qd = enumerate_quasistable(g, v0, mu)
        P = r.choice(qd)
        S = [e for e in g.edges if r.random() < 0.4]
        target, spec = g.contract(S)
        Q = pushforward_pseudo(spec, P)
        forward = is_quasistable_pseudo(target, spec.vertex_map[v0], pushforward_polarization(spec, mu), Q)
        # both routes on a perturbed candidate, quasistable or not
        edges = frozenset(e for e in g.edges if r.random() < 0.3)
        cand = PseudoDivisor(edges, Divisor({v: P.divisor[v] + r.randint(-1, 1) for v in g.vertices}))
        total = cand.degree - mu.degree
        fix = r.choice(g.vertices)
        cand = PseudoDivisor(edges, Divisor({v: cand.divisor[v] - (total if v == fix else 0) for v in g.vertices}))
        routes = _route_deletion(g, v0, mu, cand) == _route_subdivision(g, v0, mu, cand)
        if not (forward and routes):
            bad.append((g, mu, P, S, cand))
        done += 1
    return not bad, f"{len(bad)} failures", count


# 7

def criterion_7(seed=0, count=100):
    r = random.Random(seed)
    bad = []
    separating = 0
    for _ in range(count):
        g = random_graph(r, max_vertices=5, max_edges=7)
        while not g.edges:
            g = random_graph(r, max_vertices=5, max_edges=7)
        mu = random_polarization(r, g)
        v0 = r.choice(g.vertices)
        e = r.choice(g.edges)
        target, spec = g.contract([e])
        P = build_qd_poset(g, v0, mu)
        Q = build_qd_poset(target, spec.vertex_map[v0], pushforward_polarization(spec, mu))
        m = poset_pushforward(spec, P, Q)
        ok = m.order_preserving and m.closed and m.surjective
        if not g.is_loop(e) and not g.delete([e])[1]:
            separating += 1
            ok = ok and m.injective and m.order_isomorphism
        if not ok:
            bad.append((g, mu, e))
    return not bad, f"{len(bad)} failures, {separating} separating edges", count


# 8

def _random_firing(r, X, D):
    R = model_with_divisor(X, D)
    vs = [v for v in R.graph.vertices if r.random() < 0.5]
    Y = induced_subcurve(R, vs)
    outs = out_set(Y)
    if not outs:
        return CurveDivisor()
    top = min(o.length for o in outs)
    ell = top * Fraction(r.randint(1, 4), 4)
    return chip_firing_divisor(X, Y, ell)


def criterion_8(seed=0, count=100):
    r = random.Random(seed)
    bad = []
    done = 0
    while done < count:
        g = random_graph(r, max_vertices=4, max_edges=6, min_betti=1)
        if not 1 <= g.genus() <= 3 or not g.edges:
            continue
        X = random_curve(r, g)
        mu = random_polarization(r, g, degree=0)
        v0 = r.choice(g.vertices)
        trees = spanning_trees(g)
        periods = [PeriodData(X, v0, trees[0]), PeriodData(X, v0, trees[-1])]
        J = JacobianComplex(X, v0, mu)
        samples = []
        for _ in range(2):
            i = r.randrange(len(J.cells))
            coords = {e: J.model.curve.lengths[e] * Fraction(r.randint(1, 5), 6) for e in J.cells[i].pseudo.edges}
            samples.append(J.cell_divisor(i, coords))
        D1 = samples[0]
        D2 = D1 + _random_firing(r, X, D1)
        same = [jacobian_equivalent(X, pd, D1, D2) for pd in periods]
        distinct = [jacobian_equivalent(X, pd, samples[0], samples[1]) for pd in periods]
        ok = all(same) and len(set(distinct)) == 1
        if samples[0] != samples[1]:
            ok = ok and not distinct[0]
        if not ok:
            bad.append((X, mu, samples, D2))
        done += 1
    return not bad, f"{len(bad)} failures", count


# 9

def criterion_9():
    lines = []
    ok = True
    n = 0
    for g in (1, 2):
        catalog = enumerate_stable_graphs(g)
        for family in (canonical_family, concentrated_family):
            for d in (0, g):
                fam = family(d)
                t = time.perf_counter()
                try:
                    U = build_universal_qd(g, fam, d, catalog=catalog)
                except PolarizationError:
                    lines.append(f"g={g} {fam.name} d={d}: undefined (2g-2=0)")
                    continue
                rep = verify_universal_theorems(U)
                elapsed = time.perf_counter() - t
                n += 1
                good = rep.ok and rep.maximal_dimensions == (4 * g - 2,) and (g < 2 or elapsed < 60)
                ok = ok and good
                lines.append(f"g={g} {fam.name} d={d}: {'ok' if good else 'FAIL'}")
    return ok, "; ".join(lines), n


# 10

def example_curve():
    """The curve of the Out(Y) example: edges p0p2, p2p1, p0p1 (length 2), p0p3, p3p1, p3p4."""
    g = graph_from_edges([(0, 2), (2, 1), (0, 1), (0, 3), (3, 1), (3, 4)])
    return TropicalCurve(g, {0: 1, 1: 1, 2: 2, 3: 1, 4: 1, 5: 1})


def example_points(X):
    h = Fraction(1, 2)
    return {
        "q0": X.point(0, h), "q1": X.point(2, h), "q2": X.point(2, 1), "q3": X.point(4, h),
        "q4": X.point(5, Fraction(1, 4)), "q5": X.point(2, Fraction(3, 2)), "q6": X.point(5, Fraction(3, 4)),
        "p0": X.vertex_point(0), "p1": X.vertex_point(1), "p2": X.vertex_point(2),
        "p3": X.vertex_point(3), "p4": X.vertex_point(4),
    }


def example_subcurve(X):
    q = example_points(X)
    return subcurve_from_pieces(X, [(0, 0, Fraction(1, 2)), (2, 0, Fraction(1, 2)), (3, 0, 1),
                                    (4, 0, Fraction(1, 2)), (5, 0, Fraction(1, 4))], [q["q2"]])


def criterion_10():
    X = example_curve()
    q = example_points(X)
    Y = example_subcurve(X)
    outs = {(o.start, o.end) for o in out_set(Y)}
    want_out = {(q["q0"], q["p2"]), (q["q2"], q["p1"]), (q["q3"], q["p1"]), (q["q4"], q["p4"])}
    F = chip_firing_divisor(X, Y, Fraction(1, 2))
    want_F = CurveDivisor({q["p2"]: 1, q["q0"]: -1, q["q5"]: 1, q["q2"]: -1,
                           q["p1"]: 1, q["q3"]: -1, q["q6"]: 1, q["q4"]: -1})
    can = canonical_polarization(theta_graph(), 2)
    ok_out, ok_F = outs == want_out, F == want_F
    ok_can = can == Polarization(2, {0: 1, 1: 1})
    return ok_out and ok_F and ok_can, f"Out(Y)={ok_out}, chip-firing={ok_F}, canonical theta={ok_can}", 3


CRITERIA = (
    (1, "theta poset and Jacobian complex", criterion_1),
    (2, "cycle count law", criterion_2),
    (3, "ranked poset with spanning-tree tops", criterion_3),
    (4, "graph reduction uniqueness", criterion_4),
    (5, "tropical reduction vs subdivision oracle", criterion_5),
    (6, "pushforward and deletion routes", criterion_6),
    (7, "poset pushforward certificates", criterion_7),
    (8, "Abel-Jacobi consistency", criterion_8),
    (9, "universal poset theorems", criterion_9),
    (10, "worked example regressions", criterion_10),
)


def run_criterion(number):
    for k, name, fn in CRITERIA:
        if k == number:
            try:
                return _timed(k, name, fn)
            except ValidationError as exc:
                return CriterionResult(k, name, False, f"validation error: {exc}", 0, 0.0)
    raise ValidationError(f"no criterion {number}")


def run_all(stream=None):
    results = []
    for k, _, _ in CRITERIA:
        res = run_criterion(k)
        results.append(res)
        if stream is not None:
            print(res.line(), file=stream, flush=True)
    return results
