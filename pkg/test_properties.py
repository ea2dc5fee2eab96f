#!/usr/bin/env python3
"""
Property-based tests with Hypothesis: invariants of the quotients and
operators that must hold for every function, subset and exponent.
"""

import sys

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypergraph_spectra.corpus import fano_like, mixed, standard_corpus
from hypergraph_spectra.eigen import spectrum_p2
from hypergraph_spectra.nodal import convexity_lemma_check
from hypergraph_spectra.operators import (
    Side,
    apply_p_laplacian,
    energy_of,
    indicator,
    rayleigh_quotient,
)
from hypergraph_spectra.partition import Partition, e_p, general_partition_bounds

GRAPH = fano_like()
SPECTRUM = spectrum_p2(GRAPH)
EXTREMES = (SPECTRUM[0].value, SPECTRUM[-1].value)
CORPUS = standard_corpus()

values = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False,
                   allow_subnormal=False)
exponents = st.floats(min_value=1.0, max_value=4.0)


def vectors(size):
    return st.lists(values, min_size=size, max_size=size).map(np.array)


def substantial(x):
    return float(np.max(np.abs(x))) >= 1e-3


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(sorted(CORPUS)), st.data())
def test_vertex_rq1_never_exceeds_one(name, data):
    graph = CORPUS[name]
    f = data.draw(vectors(graph.n))
    assume(substantial(f))
    assert rayleigh_quotient(graph, 1.0, f) <= 1.0 + 1e-12


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(sorted(CORPUS)), st.data())
def test_hyperedge_rq1_never_exceeds_delta_maximum(name, data):
    graph = CORPUS[name]
    gamma = data.draw(vectors(graph.m))
    assume(substantial(gamma))
    ceiling = max(sum(1.0 / graph.degrees[i] for i in h.members) for h in graph.hyperedges)
    assert rayleigh_quotient(graph, 1.0, gamma, Side.HYPEREDGE) <= ceiling + 1e-12


@settings(max_examples=200, deadline=None)
@given(vectors(GRAPH.n), exponents, st.floats(min_value=0.1, max_value=10.0), st.booleans())
def test_rq_scale_invariance(f, p, scale, flip):
    assume(substantial(f))
    factor = -scale if flip else scale
    assert rayleigh_quotient(GRAPH, p, factor * f) == pytest.approx(rayleigh_quotient(GRAPH, p, f), rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.sets(st.integers(min_value=0, max_value=GRAPH.n - 1), min_size=1), exponents)
def test_e_p_is_energy_of_indicator(subset, p):
    ratio = rayleigh_quotient(GRAPH, p, indicator(GRAPH.n, subset))
    assert ratio * GRAPH.volume(subset) == pytest.approx(e_p(GRAPH, subset, p), rel=1e-12, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(vectors(mixed().m), st.floats(min_value=1.1, max_value=4.0))
def test_hyperedge_euler_identity(gamma, p):
    g = mixed()
    assume(substantial(gamma))
    pairing = float(np.sum(gamma * apply_p_laplacian(g, p, gamma, Side.HYPEREDGE)))
    assert pairing == pytest.approx(energy_of(g, p, gamma, Side.HYPEREDGE), rel=1e-9, abs=1e-9)


@settings(max_examples=300, deadline=None)
@given(exponents, values, values, st.floats(min_value=0.0, max_value=10.0),
       st.floats(min_value=0.0, max_value=10.0), st.booleans())
def test_convexity_inequality(p, t, s, a, b, swap):
    A, B = (a, -b) if not swap else (-b, a)
    assert convexity_lemma_check(p, t, s, A, B)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=2), min_size=GRAPH.n, max_size=GRAPH.n),
       st.floats(min_value=-5.0, max_value=5.0), st.floats(min_value=0.01, max_value=0.99))
def test_partition_bounds_hold_for_any_t_and_c(labels, t, c):
    blocks = [[i for i, label in enumerate(labels) if label == b] for b in range(3)]
    blocks = [block for block in blocks if block]
    assume(len(blocks) >= 2)
    lower, upper = general_partition_bounds(GRAPH, 2.0, Partition.of(blocks, GRAPH.n), t, c, EXTREMES)
    assert lower.holds and upper.holds


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
