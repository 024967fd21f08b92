from __future__ import annotations

import random

from hypothesis import HealthCheck, settings, strategies as st

from tropijac.randomgen import random_graph, random_polarization

settings.register_profile(
    "default", max_examples=40, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def graphs(draw, max_vertices=5, max_edges=7, min_betti=0):
    return random_graph(random.Random(draw(seeds)), max_vertices, max_edges, min_betti)


@st.composite
def polarized_graphs(draw, max_vertices=5, max_edges=7, min_betti=0):
    """(graph, v0, μ) with a random rational polarization."""
    r = random.Random(draw(seeds))
    g = random_graph(r, max_vertices, max_edges, min_betti)
    return g, r.choice(g.vertices), random_polarization(r, g)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
