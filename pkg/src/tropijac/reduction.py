"""Reduction of divisors to their quasistable representative, on graphs and on tropical curves."""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .divisor import laplacian
from .errors import CapExceeded, ConsistencyError, ValidationError
from .linalg import lattice_contains
from .quasistability import BetaTable, enumerate_quasistable, minimal_beta_minimizer
from .tropical import (CurveDivisor, CurvePoint, chip_firing_divisor, common_denominator,
                       induced_subcurve, is_quasistable_curve, model_with_divisor, out_set,
                       point_polarization)


@functools.lru_cache(maxsize=64)
def _pure_quasistable(graph, v0, mu):
    return tuple(p.divisor for p in enumerate_quasistable(graph, v0, mu, max_edges=0))


def reduce_graph(graph, v0, mu, D):
    """The unique (v0, μ)-quasistable divisor linearly equivalent to D."""
    if D.degree != mu.degree:
        raise ValidationError(f"divisor degree {D.degree} differs from polarization degree {mu.degree}")
    D.check_on(graph)
    L = laplacian(graph)
    matches = [E for E in _pure_quasistable(graph, v0, mu)
               if lattice_contains(L, (E - D).vector(graph.vertices))]
    if len(matches) != 1:
        raise ConsistencyError(f"{len(matches)} quasistable divisors equivalent to {D}, expected exactly one")
    return matches[0]


@dataclass(frozen=True)
class ReductionStep:
    phase: int
    subcurve: tuple  # base points that are vertices of the fired subcurve
    length: Fraction
    firing: CurveDivisor
    beta: Fraction
    rel: int
    result: CurveDivisor

    @property
    def progress(self):
        return (self.beta, -self.rel)


@dataclass
class ReductionTrace:
    initial: CurveDivisor
    steps: list = field(default_factory=list)
    final: CurveDivisor | None = None

    def __len__(self):
        return len(self.steps)

    def is_progressive(self):
        pr = [s.progress for s in self.steps]
        return all(a < b for a, b in zip(pr, pr[1:]))

    def to_json(self):
        from .serialize import curve_divisor_to_json, rat
        return {
            "initial": curve_divisor_to_json(self.initial),
            "final": curve_divisor_to_json(self.final) if self.final is not None else None,
            "steps": [{
                "phase": s.phase,
                "subcurve": [str(p) for p in s.subcurve],
                "length": rat(s.length),
                "firing": curve_divisor_to_json(s.firing),
                "beta_min": rat(s.beta),
                "rel": s.rel,
                "result": curve_divisor_to_json(s.result),
            } for s in self.steps],
        }


def _rel(R, D, mu_pts, vertices):
    """|Rel_D ∖ Y| where Rel_D is the model vertices with supp μ and supp D."""
    relevant = {CurvePoint.at_vertex(v) for v in R.base.model.vertices}
    relevant |= set(mu_pts) | set(D.support())
    return sum(1 for p in relevant if R.vertex_of[p] not in vertices)


def reduction_cap(curve, D, mu=None):
    """Default bound on the number of firing steps."""
    L = _denominator(curve, D, mu)
    mass = sum(abs(x) for _, x in D.items())
    return 10 * max(1, len(curve.model.edges)) * L * (1 + mass)


def _denominator(curve, D, mu=None):
    vals = list(curve.lengths.values())
    vals += [p.offset for p in D.support() if not p.is_vertex]
    if mu is not None:
        _, pts = point_polarization(curve, mu)
        vals += [p.offset for p in pts if not p.is_vertex]
    return common_denominator(vals)


def reduce_tropical(curve, p0, mu, D, max_steps=None):
    """The unique (p0, μ)-quasistable divisor equivalent to D, with the firing trace.

    Each round refines the model to carry D, μ and p0, takes the
    inclusion-minimal β-minimizing vertex set Y and fires it by the shortest
    out-edge length.  Once the minimum is 0 the search is restricted to sets
    containing p0, and the loop stops when that minimal set is everything.
    """
    p0 = curve.as_point(p0)
    D = CurveDivisor(dict(D.items())).check_on(curve)
    degree, mu_pts = point_polarization(curve, mu)
    if D.degree != degree:
        raise ValidationError(f"divisor degree {D.degree} differs from polarization degree {degree}")
    L = _denominator(curve, D, mu)
    cap = reduction_cap(curve, D, mu) if max_steps is None else max_steps
    trace = ReductionTrace(D)
    while True:
        R = model_with_divisor(curve, D, mu, extra=[p0])
        g = R.graph
        gmu = R.vertex_polarization(degree, mu_pts)
        gD = R.vertex_divisor(D)
        table = BetaTable(g, gmu)
        Y, b = minimal_beta_minimizer(g, gmu, gD, table=table)
        phase = 1
        if b >= 0:
            phase = 2
            Y, b = minimal_beta_minimizer(g, gmu, gD, constraint="v0", v0=R.vertex_of[p0], table=table)
            if b != 0:
                raise ConsistencyError("semistable divisor with negative β on a set containing p0")
            if Y == frozenset(g.vertices):
                break
        if len(trace.steps) >= cap:
            raise CapExceeded(f"reduction did not finish within {cap} steps")
        before = D
        sub = induced_subcurve(R, Y)
        ell = min(o.length for o in out_set(sub))
        F = chip_firing_divisor(curve, sub, ell)
        D = D - F
        for p in D.support():
            if not p.is_vertex and (p.offset * L).denominator != 1:
                raise ConsistencyError(f"offset {p.offset} escaped the common denominator {L}")
        rel = _rel(R, before, mu_pts, Y)
        step = ReductionStep(phase, tuple(sorted(R.point_of[v] for v in Y)), ell, F, b, rel, D)
        if trace.steps and not trace.steps[-1].progress < step.progress:
            raise ConsistencyError("progress measure did not increase")
        trace.steps.append(step)
    if not is_quasistable_curve(curve, p0, mu, D):
        raise ConsistencyError("reduction stopped at a divisor that is not quasistable")
    trace.final = D
    return D, trace


def tropical_equivalent(curve, D1, D2, base=None):
    """Linear equivalence on a tropical curve, tested through the Abel–Jacobi map."""
    from .jacobian import PeriodData, jacobian_equivalent
    D1 = D1.check_on(curve)
    D2 = D2.check_on(curve)
    if D1.degree != D2.degree:
        return False
    return jacobian_equivalent(curve, PeriodData(curve, base), D1, D2)


def graph_divisor_on_curve(curve, D):
    """A vertex divisor of the model, as a divisor on the curve."""
    D.check_on(curve.model)
    return CurveDivisor({CurvePoint.at_vertex(v): x for v, x in D.items()})
