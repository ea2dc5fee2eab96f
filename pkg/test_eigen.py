#!/usr/bin/env python3
"""
Tests for the eigenpair solvers: dense p = 2 spectra, variational extremes,
exact p = 1 extremes and certificates, and the smallest nonzero eigenvalue.
"""

import sys

import numpy as np
import pytest
from scipy.linalg import eigvalsh, svd
from scipy.optimize import minimize_scalar

from hypergraph_spectra.core import build
from hypergraph_spectra.corpus import (
    fano_like,
    k2,
    mixed,
    named_fixtures,
    path,
    signless_k2,
    signless_triangle,
    single_hyperedge,
    standard_corpus,
    triangle,
    two_disjoint_edges,
)
from hypergraph_spectra.eigen import (
    SolverConfig,
    certified_extremes,
    delta_bounds,
    extremal_eigenpair,
    extremal_rq1,
    kernel_dimension,
    lambda_min_bound_reports,
    lambda_min_ratio_bounds,
    lambda_min_smallest_nonzero,
    residual,
    round_to_one_laplacian,
    spectrum_p2,
    verify_1lap_eigenpair,
)
from hypergraph_spectra.errors import DomainError, InputError, SizeLimitError
from hypergraph_spectra.operators import Side, rayleigh_quotient, side_view
from hypergraph_spectra.partition import k_cut_bounds, signed_coloring_bound, signed_coloring_number


def small_config(**overrides):
    settings = dict(starts=6, max_iter=2000, seed=1, max_workers=2)
    settings.update(overrides)
    return SolverConfig(**settings)


def nonzero(values, tol=1e-8):
    return sorted(v for v in values if abs(v) > tol)


def quick_config():
    """Only the p = 2 seed and the deltas as starts, short runs."""
    return small_config(starts=1, max_iter=150)


CORPUS = standard_corpus()


# p = 2


def test_triangle_spectrum():
    pairs = spectrum_p2(triangle())
    assert [pair.value for pair in pairs] == pytest.approx([0.0, 1.5, 1.5], abs=1e-10)
    assert [pair.index for pair in pairs] == [1, 2, 3]
    assert pairs[1].multiplicity == 2 and pairs[1].cluster_start == 2
    assert pairs[0].multiplicity == 1
    assert all(pair.residual < 1e-8 for pair in pairs)


def test_triangle_hyperedge_spectrum():
    values = [pair.value for pair in spectrum_p2(triangle(), Side.HYPEREDGE)]
    assert values == pytest.approx([0.0, 1.5, 1.5], abs=1e-10)


@pytest.mark.parametrize("graph, expected", [
    (k2(), [0.0, 2.0]),
    (signless_k2(), [0.0, 2.0]),
    (signless_triangle(), [0.5, 0.5, 2.0]),
])
def test_small_spectra(graph, expected):
    assert [pair.value for pair in spectrum_p2(graph)] == pytest.approx(expected, abs=1e-10)


def test_spectra_match_dense_oracle():
    """Generalized problem against the symmetric matrix D^-1/2 I I^T D^-1/2."""
    for name, graph in standard_corpus().items():
        incidence = graph.incidence_matrix.astype(float)
        scale = 1.0 / np.sqrt(graph.degrees)
        oracle = eigvalsh(scale[:, None] * (incidence @ incidence.T) * scale[None, :])
        values = [pair.value for pair in spectrum_p2(graph)]
        np.testing.assert_allclose(values, oracle, atol=1e-8, err_msg=name)


def test_vertex_and_hyperedge_nonzero_spectra_agree():
    for name, graph in standard_corpus().items():
        vertex = nonzero(pair.value for pair in spectrum_p2(graph, Side.VERTEX))
        hyperedge = nonzero(pair.value for pair in spectrum_p2(graph, Side.HYPEREDGE))
        np.testing.assert_allclose(vertex, hyperedge, atol=1e-8, err_msg=name)


def test_spectrum_invariant_under_transforms():
    g = fano_like()
    base = [pair.value for pair in spectrum_p2(g)]
    for variant in (g.reversed(), g.reversed([1, 3]), g.relabeled([4, 2, 0, 1, 3]), g.duplicated()):
        np.testing.assert_allclose([pair.value for pair in spectrum_p2(variant)], base, atol=1e-10)


def test_eigenvector_sign_is_canonical():
    for pair in spectrum_p2(mixed()):
        lead = int(np.argmax(np.abs(pair.function) >= np.abs(pair.function).max() * (1 - 1e-9)))
        assert pair.function[lead] > 0


# p > 1


def test_k2_extremes_at_p3():
    cfg = small_config()
    low = extremal_eigenpair(k2(), 3.0, Side.VERTEX, "min", cfg)
    high = extremal_eigenpair(k2(), 3.0, Side.VERTEX, "max", cfg)
    assert low.value == pytest.approx(0.0, abs=1e-10)
    assert high.value == pytest.approx(4.0, rel=1e-9)
    assert high.converged and low.converged
    assert high.index == 2 and low.index == 1


def test_triangle_extremes_at_p3():
    g = triangle()
    cfg = small_config()
    low, high = certified_extremes(g, 3.0, Side.VERTEX, cfg)
    assert low.value == pytest.approx(0.0, abs=1e-10)
    assert high.value >= 1.0 - 1e-12
    assert rayleigh_quotient(g, 3.0, high.function) == pytest.approx(high.value)
    assert all(report.holds for report in delta_bounds(g, 3.0, Side.VERTEX, (low, high)))


def test_extremes_are_deterministic():
    g = mixed()
    cfg = small_config(starts=8, max_iter=500, seed=3)
    first = extremal_eigenpair(g, 2.5, Side.HYPEREDGE, "max", cfg)
    second = extremal_eigenpair(g, 2.5, Side.HYPEREDGE, "max", cfg)
    assert first.value == second.value
    assert np.array_equal(first.function, second.function)


def test_residual_of_p2_eigenpair():
    pair = spectrum_p2(path(4))[2]
    assert residual(path(4), 2.0, pair.value, pair.function) < 1e-10


def test_extremal_eigenpair_rejects_p1():
    with pytest.raises(DomainError):
        extremal_eigenpair(k2(), 1.0)
    with pytest.raises(InputError):
        extremal_eigenpair(k2(), 2.0, Side.VERTEX, "middle")


def test_solver_config_validation():
    with pytest.raises(DomainError):
        SolverConfig(starts=0)
    with pytest.raises(DomainError):
        SolverConfig(tol_residual=0.0)
    assert len(SolverConfig(seed=5).generators(3)) == 3


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 4.0])
def test_extremes_bracket_one_and_stay_in_range(p):
    # RQ_p <= max_h |h|^(p-1) by Hoelder on every hyperedge.
    for name, graph in CORPUS.items():
        low, high = certified_extremes(graph, p, Side.VERTEX, quick_config())
        top = float(np.max(graph.cardinalities)) ** (p - 1)
        assert all(r.holds for r in delta_bounds(graph, p, Side.VERTEX, (low, high))), name
        assert low.value >= -1e-12 and high.value <= top + 1e-9, name


def test_range_is_attained_by_single_hyperedge():
    g = single_hyperedge()
    high = extremal_eigenpair(g, 4.0, Side.VERTEX, "max", small_config())
    assert high.value == pytest.approx(27.0, rel=1e-8)


def test_continuation_leads_the_start_pool():
    cfg = quick_config()
    low = extremal_eigenpair(k2(), 1.01, Side.VERTEX, "min", cfg)
    high = extremal_eigenpair(k2(), 1.01, Side.VERTEX, "max", cfg)
    # seed + 2 deltas, plus the continued minimizer and the p = 1 minimizer (min only)
    assert low.notes[0].startswith("best of 5 starts")
    assert high.notes[0].startswith("best of 4 starts")
    assert extremal_eigenpair(k2(), 1.5, Side.VERTEX, "min", cfg).notes[0].startswith("best of 3 starts")


VARIANTS = {
    "relabeled": lambda g: g.relabeled([4, 2, 0, 1, 3]),
    "reversed": lambda g: g.reversed([1, 3]),
    "duplicated": lambda g: g.duplicated(),
}


@pytest.mark.parametrize("p", [1.0, 3.0])
@pytest.mark.parametrize("variant", sorted(VARIANTS))
def test_extremes_and_bounds_invariant_under_transforms(variant, p):
    base = fano_like()
    other = VARIANTS[variant](base)
    cfg = small_config()
    pairs = [certified_extremes(g, p, Side.VERTEX, cfg) for g in (base, other)]
    for first, second in zip(*pairs):
        assert second.value == pytest.approx(first.value, rel=1e-6, abs=1e-9)

    reports = [delta_bounds(g, p, Side.VERTEX, pair) + k_cut_bounds(g, p, 2, pair)
               for g, pair in zip((base, other), pairs)]
    assert [(r.name, r.holds) for r in reports[0]] == [(r.name, r.holds) for r in reports[1]]
    np.testing.assert_allclose([r.lhs for r in reports[1]], [r.lhs for r in reports[0]], rtol=1e-6, atol=1e-9)
    np.testing.assert_allclose([r.rhs for r in reports[1]], [r.rhs for r in reports[0]], rtol=1e-6, atol=1e-9)
    for g, pair in zip((base, other), pairs):
        _, coloring = signed_coloring_number(g)
        assert all(r.holds for r in signed_coloring_bound(g, p, coloring, pair))


# p = 1


def test_p1_vertex_maximum_is_one():
    pair = extremal_rq1(triangle(), Side.VERTEX, "max")
    assert pair.value == 1.0
    assert pair.certificate.feasible and pair.residual == 0.0


def test_p1_hyperedge_maximum_closed_form():
    pair = extremal_rq1(triangle(), Side.HYPEREDGE, "max")
    assert pair.value == pytest.approx(1.0)
    assert pair.certificate.feasible
    top = extremal_rq1(fano_like(), Side.HYPEREDGE, "max")
    # Hyperedge {3,4,5} has only vertices of degree 2: 1/2 + 1/2 + 1/2.
    assert top.value == pytest.approx(1.5)
    assert int(np.argmax(top.function)) == 1


def test_p1_minimum():
    pair = extremal_rq1(k2(), Side.VERTEX, "min")
    assert pair.value == pytest.approx(0.0, abs=1e-12)
    assert pair.certificate.feasible


def test_one_laplacian_certificates_on_k2():
    g = k2()
    feasible = verify_1lap_eigenpair(g, 1, [1.0, -1.0])
    assert feasible.feasible and feasible.exact
    assert feasible.z_edge.tolist() == [1.0]
    assert feasible.z_vertex.tolist() == [1.0, -1.0]
    assert not verify_1lap_eigenpair(g, 1, [1.0, 1.0])
    assert not verify_1lap_eigenpair(g, 2, [1.0, -1.0])
    with pytest.raises(DomainError):
        verify_1lap_eigenpair(g, -1, [1.0, -1.0])


def test_p_near_one_limit_is_certified():
    g = k2()
    high = extremal_eigenpair(g, 1.01, Side.VERTEX, "max", small_config())
    f = high.function.copy()
    f[np.abs(f) < 1e-6 * np.abs(f).max()] = 0.0
    value = rayleigh_quotient(g, 1.0, f)
    assert value == pytest.approx(1.0)
    assert verify_1lap_eigenpair(g, value, f).feasible


def test_p_near_one_minimum_rounds_to_certified_pair():
    cfg = quick_config()
    for name, graph in CORPUS.items():
        near = extremal_eigenpair(graph, 1.01, Side.VERTEX, "min", cfg)
        limit = round_to_one_laplacian(graph, near.function)
        assert limit.certificate.feasible and limit.converged, name
        assert limit.value >= extremal_rq1(graph, Side.VERTEX, "min").value - 1e-9, name


def test_round_to_one_laplacian_on_k2():
    pair = round_to_one_laplacian(k2(), [0.7, -0.7 + 1e-9])
    assert pair.p == 1.0 and pair.index == 1
    assert pair.value == pytest.approx(1.0)
    assert pair.certificate.feasible


def test_round_to_one_laplacian_drops_tiny_entries():
    pair = round_to_one_laplacian(k2(), [1.0, 1e-9])
    assert pair.function[1] == 0.0
    assert pair.value == pytest.approx(1.0)


def cycle_with_chord():
    return build(12, [({i}, {(i + 1) % 12}) for i in range(12)] + [({0}, {6})])


def test_p1_minimum_with_kernel_skips_enumeration():
    # 13 hyperedges on 12 vertices: the hyperedge-side kernel is nontrivial.
    low = extremal_rq1(cycle_with_chord(), Side.HYPEREDGE, "min")
    assert low.value == 0.0
    assert low.certificate.feasible and low.certificate.exact
    assert rayleigh_quotient(cycle_with_chord(), 1.0, low.function, Side.HYPEREDGE) < 1e-12


def test_p1_minimum_above_enumeration_limit():
    # Signless odd cycle: the vertex-side kernel is trivial.
    g = build(13, [({i, (i + 1) % 13}, set()) for i in range(13)])
    with pytest.raises(SizeLimitError):
        extremal_rq1(g, Side.VERTEX, "min")
    with pytest.raises(SizeLimitError):
        certified_extremes(g, 1.0)
    low, high = certified_extremes(g, 1.0, Side.VERTEX, quick_config(), heuristic=True)
    assert 0.0 < low.value < 1.0 == high.value
    assert low.notes[0].startswith("heuristic")


def test_certificate_with_free_multipliers():
    # The delta on vertex 1 of the triangle leaves hyperedge 2 and vertices 2, 3 free.
    cert = verify_1lap_eigenpair(triangle(), 1, [1.0, 0.0, 0.0])
    assert cert.feasible and cert.exact
    assert cert.free_variables == 3
    assert np.all(np.abs(cert.z_edge) <= 1) and np.all(np.abs(cert.z_vertex) <= 1)


# Smallest nonzero eigenvalue


def test_kernel_dimension():
    assert kernel_dimension(triangle()) == 1
    assert kernel_dimension(signless_k2()) == 1
    assert kernel_dimension(signless_triangle()) == 0
    assert kernel_dimension(two_disjoint_edges()) == 2
    assert kernel_dimension(triangle(), Side.HYPEREDGE) == 1


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
def test_lambda_min_on_k2(p):
    result = lambda_min_smallest_nonzero(k2(), p, Side.VERTEX, small_config())
    assert result.value == pytest.approx(2 ** (p - 1), rel=1e-6)
    assert result.kernel_dimension == 1


def test_lambda_min_matches_spectrum_at_p2():
    cfg = small_config()
    for graph in (triangle(), path(4), mixed(), fano_like(), two_disjoint_edges()):
        d = kernel_dimension(graph)
        expected = spectrum_p2(graph)[d].value
        result = lambda_min_smallest_nonzero(graph, 2.0, Side.VERTEX, cfg)
        assert result.value == pytest.approx(expected, rel=1e-7)


def test_lambda_min_bounds_hold():
    cfg = small_config(max_iter=1000)
    for p in (1.5, 3.0):
        reports = lambda_min_bound_reports(triangle(), p, cfg)
        assert [r.name for r in reports] == ["lambda_min_restricted_rq", "lambda_min_p2_comparison"]
        assert all(r.holds for r in reports)


def grid_lambda_min(graph, p, samples=2000):
    """Smallest nonzero vertex eigenvalue by a grid over a two-dimensional span."""
    view = side_view(graph, Side.VERTEX)
    _, sigma, vt = svd(view.matrix)
    rank = int(np.sum(sigma > 1e-10 * sigma[0]))
    span, kernel = vt[:rank], vt[rank:]
    assert span.shape[0] == 2 and kernel.shape[0] == 1
    best = np.inf
    for theta in np.linspace(0.0, np.pi, samples, endpoint=False):
        f = np.cos(theta) * span[0] + np.sin(theta) * span[1]
        energy = np.sum(view.edge_weights * np.abs(view.matrix @ f) ** p)
        mass = minimize_scalar(lambda c: np.sum(view.node_weights * np.abs(f - c * kernel[0]) ** p)).fun
        best = min(best, energy / mass)
    return best


@pytest.mark.parametrize("graph, p, expected", [
    (triangle(), 1.5, 5 ** 0.5 / 2),
    (triangle(), 3.0, 2.5),
    (path(3), 1.5, 1.0),
    (path(3), 3.0, 1.0),
])
def test_lambda_min_matches_grid_search(graph, p, expected):
    oracle = grid_lambda_min(graph, p)
    result = lambda_min_smallest_nonzero(graph, p, Side.VERTEX, small_config())
    assert oracle == pytest.approx(expected, rel=1e-3)
    assert result.value == pytest.approx(oracle, rel=1e-4)


@pytest.mark.parametrize("graph", [k2(), two_disjoint_edges()])
def test_lambda_min_at_p1_is_certified(graph):
    cfg = small_config()
    result = lambda_min_smallest_nonzero(graph, 1.0, Side.VERTEX, cfg)
    assert result.value == 1.0
    assert result.converged
    assert result.certificate.feasible and result.certificate.exact
    reports = lambda_min_bound_reports(graph, 1.0, cfg, lambda_min=result)
    assert all(r.holds and not r.notes for r in reports)


@pytest.mark.parametrize("p", [1.0, 4.0])
def test_lambda_min_bounds_hold_on_fixtures(p):
    cfg = quick_config()
    for name, graph in named_fixtures().items():
        if p == 1.0 and graph.n > 4:
            continue
        assert all(r.holds for r in lambda_min_bound_reports(graph, p, cfg)), name


def test_lambda_min_ratio_bounds_on_k2():
    report = lambda_min_ratio_bounds(k2(), 3.0, 2.0, values=(4.0, 2.0))
    assert report.lhs == pytest.approx(1.0)
    assert report.middle == pytest.approx(2 ** (1 / 6))
    assert report.rhs == pytest.approx(2 ** (1 / 6))
    assert report.holds
    swapped = lambda_min_ratio_bounds(k2(), 2.0, 3.0, values=(2.0, 4.0))
    assert swapped.middle == pytest.approx(report.middle)


def test_lambda_min_continuity_across_p_grid():
    g = k2()
    cfg = small_config()
    grid = [1.0 + 0.25 * k for k in range(9)]
    values = {p: lambda_min_smallest_nonzero(g, p, Side.VERTEX, cfg).value for p in grid}
    for q, p in zip(grid[:-1], grid[1:]):
        assert lambda_min_ratio_bounds(g, p, q, values=(values[p], values[q])).holds


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
