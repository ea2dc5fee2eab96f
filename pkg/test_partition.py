#!/usr/bin/env python3
"""
Tests for the combinatorial quantities and the eigenvalue bounds built on them:
Cheeger constant, k-cuts, signed colorings, (k,l)-families, general partitions
and the hyperedge-side cuts and bipartite sub-hypergraphs.
"""

import sys

import numpy as np
import pytest

from hypergraph_spectra.coloring import Coloring
from hypergraph_spectra.corpus import (
    edge_plus_triangle,
    fano_like,
    k2,
    mixed,
    path,
    signless_triangle,
    standard_corpus,
    triangle,
)
from hypergraph_spectra.eigen import SolverConfig, certified_extremes, spectrum_p2
from hypergraph_spectra.errors import (
    DegenerateError,
    DomainError,
    EmptySubsetError,
    InvalidColoringError,
    InvalidFamilyError,
    InvalidPartitionError,
    SizeLimitError,
)
from hypergraph_spectra.operators import Side, indicator, rayleigh_quotient
from hypergraph_spectra.partition import (
    KLFamily,
    Partition,
    bipartite_eta_bound,
    bipartite_eta_max,
    bipartite_orientation,
    cheeger,
    e_p,
    e_p_full_bounds,
    e_p_hyperedges,
    enumerate_kl_families,
    eta_p,
    general_partition_bounds,
    hyperedge_cut_bounds,
    hyperedge_k_cut,
    hyperedge_k_cut_bounds,
    k_cut,
    k_cut_bounds,
    kl_family_bound,
    partition_corollary_bounds,
    sandwich_ep,
    set_partitions,
    signed_coloring_bound,
    signed_coloring_number,
    signed_hyperedge_coloring_bound,
    unsigned_coloring_number,
)


def p2_extremes(graph, side=Side.VERTEX):
    spectrum = spectrum_p2(graph, side)
    return spectrum[0], spectrum[-1]


def random_partition(rng, n, k):
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
    rng.shuffle(labels)
    return Partition.of([np.flatnonzero(labels == b) for b in range(k)], n)


# Set quantities


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
def test_e_p_on_triangle(p):
    g = triangle()
    assert e_p(g, {0}, p) == pytest.approx(2.0)
    assert e_p(g, {0, 1, 2}, p) == 0.0
    assert e_p(g, set(), p) == 0.0


def test_e_p_is_quotient_of_indicator():
    g = mixed()
    for subset in ({0}, {1, 3}, {0, 2, 3}):
        expected = rayleigh_quotient(g, 2.0, indicator(g.n, subset)) * g.volume(subset)
        assert e_p(g, subset, 2.0) == pytest.approx(expected)


def test_hyperedge_set_quantities():
    g = triangle()
    assert e_p_hyperedges(g, {0}, 2.0) == pytest.approx(1.0)
    assert eta_p(g, {1, 2}, 2.0) == pytest.approx(0.5)
    assert e_p_hyperedges(g, set(), 2.0) == 0.0
    with pytest.raises(EmptySubsetError):
        eta_p(g, set(), 2.0)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
def test_e_p_full_bounds(p):
    for name, graph in standard_corpus().items():
        assert all(r.holds for r in e_p_full_bounds(graph, p)), name


# Cheeger


def test_cheeger_triangle():
    result = cheeger(triangle())
    assert result.value == pytest.approx(1.0)
    assert result.subset == frozenset({0})
    assert not result.widened


def test_cheeger_disconnected_is_zero():
    result = cheeger(edge_plus_triangle())
    assert result.value == 0.0
    assert result.subset == frozenset({0, 1})


def test_cheeger_widens_on_k2():
    result = cheeger(k2())
    assert result.value == pytest.approx(1.0)
    assert result.widened


def test_cheeger_limits():
    with pytest.raises(SizeLimitError):
        cheeger(path(6), limit=5)


def test_cheeger_set_sandwich():
    g = fano_like()
    low, high = p2_extremes(g)
    result = cheeger(g)
    assert sandwich_ep(g, result.subset, 2.0, low.value, high.value).holds


@pytest.mark.parametrize("p", [1.0, 2.0])
def test_ep_sandwich_on_every_subset(p):
    for name, graph in standard_corpus().items():
        low, high = certified_extremes(graph, p)
        for mask in range(1, 2 ** graph.n):
            subset = [i for i in range(graph.n) if mask >> i & 1]
            assert sandwich_ep(graph, subset, p, low.value, high.value).holds, (name, subset)


# Cuts


def test_set_partitions_counts():
    assert len(list(set_partitions(4, 2))) == 7
    assert len(list(set_partitions(4, 3))) == 6
    assert len(list(set_partitions(5, 1))) == 1
    assert list(set_partitions(3, 4)) == []
    for masks in set_partitions(5, 3):
        assert sum(masks) == 31 and all(masks)


def test_triangle_cuts():
    g = triangle()
    assert k_cut(g, 2, 2.0, "max").value == pytest.approx(4.0)
    assert k_cut(g, 3, 1.0, "max").value == pytest.approx(6.0)
    assert k_cut(g, 2, 2.0, "balanced_min").value == pytest.approx(1.5)
    cut = k_cut(g, 2, 2.0, "balanced_max")
    assert cut.exact and cut.partition.k == 2


def test_cut_argument_checks():
    with pytest.raises(DomainError):
        k_cut(triangle(), 4, 2.0)
    with pytest.raises(DomainError):
        k_cut(triangle(), 2, 2.0, "median")
    with pytest.raises(SizeLimitError):
        k_cut(path(5), 2, 2.0, limit=3)


def test_local_search_cut():
    cut = k_cut(path(5), 2, 2.0, "balanced_min", limit=3, heuristic=True)
    assert not cut.exact
    assert cut.partition.k == 2
    exact = k_cut(path(5), 2, 2.0, "balanced_min")
    assert cut.value >= exact.value - 1e-12


@pytest.mark.parametrize("k", [2, 3])
def test_k_cut_bounds(k):
    for graph in (triangle(), mixed(), fano_like()):
        reports = k_cut_bounds(graph, 2.0, k, p2_extremes(graph))
        assert [r.name for r in reports] == ["kcut_lambda_1_upper", "kcut_lambda_n_lower"]
        assert all(r.holds for r in reports)


def test_k_cut_bounds_at_p1():
    g = mixed()
    reports = k_cut_bounds(g, 1.0, 2, certified_extremes(g, 1.0))
    assert all(r.holds for r in reports)


# Colorings


def test_signed_coloring_numbers():
    assert signed_coloring_number(triangle())[0] == 3
    assert signed_coloring_number(signless_triangle())[0] == 1
    assert unsigned_coloring_number(signless_triangle())[0] == 3
    assert signed_coloring_number(triangle(), Side.HYPEREDGE)[0] == 3


def test_signed_coloring_bound():
    g = triangle()
    _, coloring = signed_coloring_number(g)
    reports = signed_coloring_bound(g, 2.0, coloring, p2_extremes(g))
    assert reports[0].middle == pytest.approx(1.0)
    assert reports[0].holds


def test_signed_coloring_equality_at_p1():
    g = triangle()
    _, coloring = signed_coloring_number(g)
    reports = signed_coloring_bound(g, 1.0, coloring, certified_extremes(g, 1.0))
    assert [r.name for r in reports] == ["signed_coloring", "signed_coloring_p1_equality"]
    assert all(r.holds for r in reports)


def test_signed_coloring_bound_rejects_improper_coloring():
    g = triangle()
    with pytest.raises(InvalidColoringError):
        signed_coloring_bound(g, 2.0, Coloring.of([0, 0, 1]), p2_extremes(g))


def test_signed_coloring_bound_on_corpus():
    for name, graph in standard_corpus().items():
        _, coloring = signed_coloring_number(graph)
        assert all(r.holds for r in signed_coloring_bound(graph, 2.0, coloring, p2_extremes(graph))), name


def test_signed_hyperedge_coloring_bound():
    g = fano_like()
    _, coloring = signed_coloring_number(g, Side.HYPEREDGE)
    report = signed_hyperedge_coloring_bound(g, 2.0, coloring, p2_extremes(g, Side.HYPEREDGE))
    assert report.holds


# (k,l)-families


def test_kl_family_values():
    assert kl_family_bound(k2(), KLFamily.of([{0}, {1}], 1)).middle == pytest.approx(2.0)
    family = KLFamily.of([{0}, {1}, {2}], 1)
    assert kl_family_bound(triangle(), family).middle == pytest.approx(1.5)


def test_kl_family_validation():
    with pytest.raises(InvalidFamilyError):
        KLFamily.of([{0}, {0, 1}], 1)
    with pytest.raises(InvalidFamilyError):
        KLFamily.of([{0}, set()], 1)
    with pytest.raises(DegenerateError):
        KLFamily.of([{0, 1}], 1)


def test_enumerate_kl_families():
    assert len(list(enumerate_kl_families(2, 2, 1))) == 1
    assert len(list(enumerate_kl_families(3, 2, 1))) == 6
    with pytest.raises(DomainError):
        list(enumerate_kl_families(3, 2, 2))


@pytest.mark.parametrize("k, l", [(2, 1), (3, 1), (3, 2)])
def test_kl_family_bounds_hold(k, l):
    for graph in (triangle(), mixed(), signless_triangle()):
        extremes = p2_extremes(graph)
        for family in enumerate_kl_families(graph.n, k, l):
            assert kl_family_bound(graph, family, extremes).holds


# General partitions


def test_general_partition_triangle():
    g = triangle()
    singletons = Partition.of([{0}, {1}, {2}], 3)
    lower, upper = general_partition_bounds(g, 2.0, singletons, 1.0, 0.5, p2_extremes(g))
    assert lower.lhs == pytest.approx(2.0 / 3.0)
    assert upper.rhs == pytest.approx(8.0 / 3.0)
    assert lower.holds and upper.holds
    _, upper_p1 = general_partition_bounds(g, 1.0, singletons, 1.0, 0.5, certified_extremes(g, 1.0))
    assert upper_p1.rhs == pytest.approx(2.0 / 3.0)


def test_general_partition_argument_checks():
    g = triangle()
    whole = Partition.of([{0, 1, 2}], 3)
    with pytest.raises(DomainError):
        general_partition_bounds(g, 2.0, whole, 1.0, 1.0, p2_extremes(g))
    with pytest.raises(DegenerateError):
        general_partition_bounds(g, 2.0, whole, 0.0, 0.5, p2_extremes(g))
    with pytest.raises(InvalidPartitionError):
        Partition.of([{0, 1}, {1, 2}], 3)
    with pytest.raises(InvalidPartitionError):
        Partition.of([{0}], 3)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
def test_general_partition_random_draws(p):
    rng = np.random.default_rng(12)
    cfg = SolverConfig(starts=2, max_iter=1000, seed=1, max_workers=2)
    for graph in standard_corpus().values():
        extremes = certified_extremes(graph, p, Side.VERTEX, cfg)
        for _ in range(50):
            k = int(rng.integers(2, graph.n + 1))
            partition = random_partition(rng, graph.n, k)
            t = float(rng.uniform(-5.0, 5.0))
            c = float(rng.uniform(0.05, 0.95))
            lower, upper = general_partition_bounds(graph, p, partition, t, c, extremes)
            assert lower.holds and upper.holds


def test_partition_corollaries():
    g = triangle()
    singletons = Partition.of([{0}, {1}, {2}], 3)
    reports = partition_corollary_bounds(g, 2.0, singletons, p2_extremes(g))
    names = [r.name for r in reports]
    assert names == [
        "partition_lambda_n_lower[t=k-1,c=1/2]",
        "partition_lambda_n_lower[t=k-1,c=1/k]",
        "partition_lambda_n_lower[t=1,c=1/2]",
        "partition_lambda_1_upper[t=-1]",
        "partition_lambda_1_upper[t=inf]",
    ]
    assert all(r.holds for r in reports)
    assert reports[2].lhs == pytest.approx(2.0 / 3.0)

    at_p1 = partition_corollary_bounds(g, 1.0, singletons, certified_extremes(g, 1.0))
    assert at_p1[-1].name == "partition_p1_lambda_n_lower"
    assert all(r.holds for r in at_p1)


# Hyperedge side


def test_hyperedge_cuts_on_triangle():
    g = triangle()
    assert hyperedge_k_cut(g, 2, 2.0, "balanced_min").value == pytest.approx(1.5)
    assert hyperedge_k_cut(g, 2, 2.0, "max").value == pytest.approx(2.0)
    reports = hyperedge_k_cut_bounds(g, 2.0, 2, p2_extremes(g, Side.HYPEREDGE))
    assert {r.name for r in reports} >= {"hyperedge_block_eta", "hyperedge_kcut_mu_1_upper",
                                         "hyperedge_kcut_mu_m_lower"}
    assert all(r.holds for r in reports)


def test_hyperedge_cut_bounds_need_hyperedge_partition():
    g = mixed()
    with pytest.raises(InvalidPartitionError):
        hyperedge_cut_bounds(g, 2.0, Partition.of([{0, 1}, {2, 3}], 4), p2_extremes(g, Side.HYPEREDGE))


def test_bipartite_orientation():
    g = triangle()
    assert bipartite_orientation(g, {0, 1, 2}) is None
    signs = bipartite_orientation(g, {0, 1})
    assert signs[0] == 1 and signs[1] == -1


def test_bipartite_eta_max():
    g = triangle()
    result = bipartite_eta_max(g, 2.0)
    assert result.value == pytest.approx(1.5)
    assert result.hyperedges == frozenset({0, 1})
    assert result.exact
    with pytest.raises(SizeLimitError):
        bipartite_eta_max(g, 2.0, limit=2)
    assert not bipartite_eta_max(g, 2.0, limit=2, heuristic=True).exact


def test_bipartite_eta_bound_equality_at_p1():
    g = triangle()
    mu_m = certified_extremes(g, 1.0, Side.HYPEREDGE)[1].value
    reports = bipartite_eta_bound(g, 1.0, mu_m)
    assert [r.name for r in reports] == ["bipartite_eta_max", "bipartite_eta_p1_equality"]
    assert all(r.holds for r in reports)


def test_bipartite_eta_bound_on_corpus():
    for name, graph in standard_corpus().items():
        mu_m = spectrum_p2(graph, Side.HYPEREDGE)[-1].value
        assert all(r.holds for r in bipartite_eta_bound(graph, 2.0, mu_m)), name


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
