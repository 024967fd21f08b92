"""Quasistable divisors on graphs and tropical curves, in exact rational arithmetic."""
from __future__ import annotations

from .divisor import Divisor, PseudoDivisor, equivalent, is_principal
from .errors import CapExceeded, ConsistencyError, TropijacError, ValidationError
from .graph import Graph, Specialization, canonical_form, graph_from_edges, theta_graph
from .jacobian import JacobianComplex, PeriodData, build_jacobian_complex, jacobian_equivalent
from .polarization import Polarization, canonical_polarization, v0_concentrated_polarization
from .poset import QDPoset, build_qd_poset, poset_pushforward, verify_ranked
from .quasistability import beta, enumerate_quasistable, is_quasistable, is_quasistable_pseudo
from .reduction import reduce_graph, reduce_tropical, tropical_equivalent
from .tropical import CurveDivisor, CurvePoint, TropicalCurve, chip_firing_divisor
from .universal import build_universal_qd, enumerate_stable_graphs, verify_universal_theorems

__version__ = "0.1.0"
