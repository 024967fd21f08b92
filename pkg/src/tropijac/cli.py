"""Command line: check, reduce, poset, jacobian, universal, selftest.

Exit codes: 0 success, 2 bad input (or a size cap), 3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .errors import CapExceeded, ConsistencyError, ValidationError
from .polarization import Polarization, UniversalPolarization, canonical_polarization

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 2, 3


def _load(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{what} {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what} {path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _graph_polarization(graph, args, v0):
    name, d = args.mu, args.degree
    if name == "zero" and d is None:
        d = 0
    if name in ("canonical", "concentrated") and d is None:
        raise ValidationError(f"--mu {name} needs --degree")
    if name == "zero":
        if d != 0:
            raise ValidationError("--mu zero only has degree 0")
        return Polarization(0)
    if name == "canonical":
        return canonical_polarization(graph, d)
    if name == "concentrated":
        return Polarization(d, {v0: d})
    mu = ser.polarization_from_json(_load(name, "polarization"))
    if d is not None and mu.degree != d:
        raise ValidationError(f"polarization file has degree {mu.degree}, not {d}")
    return mu


def _curve_polarization(curve, args, p0):
    if args.mu in ("zero", "canonical", "concentrated"):
        return _graph_polarization(curve.model, args, p0)
    mu = ser.curve_polarization_from_json(_load(args.mu, "polarization"), curve)
    if args.degree is not None and mu.degree != args.degree:
        raise ValidationError(f"polarization file has degree {mu.degree}, not {args.degree}")
    return mu


def _v0(graph, args):
    if args.v0 is None:
        return graph.v0
    graph._check_vertex(args.v0)
    return args.v0


def cmd_check(args):
    from .quasistability import check_quasistable, is_quasistable_pseudo
    graph = ser.graph_from_json(_load(args.graph, "graph"))
    v0 = _v0(graph, args)
    mu = _graph_polarization(graph, args, v0)
    if args.pseudo:
        P = ser.pseudo_divisor_from_json(_load(args.pseudo, "pseudo-divisor"))
        return {"quasistable": is_quasistable_pseudo(graph, v0, mu, P)}
    D = ser.divisor_from_json(_load(args.divisor, "divisor")).check_on(graph)
    rep = check_quasistable(graph, v0, mu, D)
    out = {"quasistable": rep is None}
    if rep is not None:
        out["witness"] = {"subset": sorted(rep.subset), "beta": ser.rat(rep.value), "status": rep.status}
    return out


def cmd_reduce(args):
    from .reduction import reduce_graph, reduce_tropical
    if args.curve:
        curve = ser.curve_from_json(_load(args.curve, "curve"))
        p0 = _v0(curve.model, args)
        mu = _curve_polarization(curve, args, p0)
        D = ser.curve_divisor_from_json(_load(args.divisor, "divisor"), curve)
        out, trace = reduce_tropical(curve, p0, mu, D)
        result = {"divisor": ser.curve_divisor_to_json(out)}
        if args.trace:
            result["trace"] = trace.to_json()
        return result
    if not args.graph:
        raise ValidationError("reduce needs --graph or --curve")
    graph = ser.graph_from_json(_load(args.graph, "graph"))
    v0 = _v0(graph, args)
    mu = _graph_polarization(graph, args, v0)
    D = ser.divisor_from_json(_load(args.divisor, "divisor"))
    return {"divisor": ser.divisor_to_json(reduce_graph(graph, v0, mu, D))}


def cmd_poset(args):
    from .poset import build_qd_poset
    graph = ser.graph_from_json(_load(args.graph, "graph"))
    v0 = _v0(graph, args)
    P = build_qd_poset(graph, v0, _graph_polarization(graph, args, v0))
    return P.to_dot() if args.dot else P.to_json()


def cmd_jacobian(args):
    from .jacobian import build_jacobian_complex
    curve = ser.curve_from_json(_load(args.curve, "curve"))
    p0 = _v0(curve.model, args)
    J = build_jacobian_complex(curve, p0, _curve_polarization(curve, args, p0))
    return J.to_dot() if args.dot else J.to_json()


def cmd_universal(args):
    from .universal import build_universal_qd, verify_universal_theorems
    weight = {"canonical": 1, "concentrated": 0}.get(args.family)
    if weight is None:
        raise ValidationError(f"unknown family {args.family!r}")
    fam = UniversalPolarization(args.degree, weight, args.family)
    U = build_universal_qd(args.genus, fam, args.degree)
    out = U.to_json()
    rep = verify_universal_theorems(U)
    out["report"] = {"ok": rep.ok, "maximal_dimensions": list(rep.maximal_dimensions),
                     "connected_codim1": rep.connected_codim1, "violations": rep.violations}
    if not rep.ok:
        raise ConsistencyError("; ".join(rep.violations))
    return out


def cmd_selftest(args):
    from .acceptance import run_all
    results = run_all(sys.stderr)
    out = {"passed": all(r.passed for r in results),
           "criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail}
                        for r in results]}
    if not out["passed"]:
        raise _SelftestFailed(out)
    return out


class _SelftestFailed(Exception):
    def __init__(self, payload):
        super().__init__("selftest failed")
        self.payload = payload


def build_parser():
    p = argparse.ArgumentParser(prog="tropijac", description="Quasistable divisors on graphs and tropical curves.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, mu=True):
        sp.add_argument("--v0", type=int, help="marked vertex (default: vertex of leg 0)")
        if mu:
            sp.add_argument("--mu", default="zero",
                            help="zero, canonical, concentrated, or a polarization JSON file")
            sp.add_argument("--degree", type=int)

    c = sub.add_parser("check", help="quasistability of a divisor or pseudo-divisor")
    c.add_argument("--graph", required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--divisor")
    g.add_argument("--pseudo")
    common(c)
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("reduce", help="quasistable representative on a graph or a curve")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--curve")
    r.add_argument("--divisor", required=True)
    r.add_argument("--trace", action="store_true")
    common(r)
    r.set_defaults(func=cmd_reduce)

    q = sub.add_parser("poset", help="the poset of quasistable pseudo-divisors")
    q.add_argument("--graph", required=True)
    q.add_argument("--dot", action="store_true")
    common(q)
    q.set_defaults(func=cmd_poset)

    j = sub.add_parser("jacobian", help="cells of the Jacobian of a tropical curve")
    j.add_argument("--curve", required=True)
    j.add_argument("--dot", action="store_true")
    common(j)
    j.set_defaults(func=cmd_jacobian)

    u = sub.add_parser("universal", help="universal poset for genus g")
    u.add_argument("--genus", type=int, required=True)
    u.add_argument("--family", default="concentrated", choices=["canonical", "concentrated"])
    u.add_argument("--degree", type=int, default=0)
    u.set_defaults(func=cmd_universal)

    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.set_defaults(func=cmd_selftest)
    return p


def _emit(out, stream):
    if isinstance(out, str):
        stream.write(out)
    else:
        stream.write(json.dumps(out, indent=2) + "\n")


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except _SelftestFailed as exc:
        _emit(exc.payload, stdout)
        return EXIT_CONSISTENCY
    except (ValidationError, CapExceeded) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=stderr)
        return EXIT_CONSISTENCY
    _emit(out, stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
