"""
Vertex and hyperedge p-Laplacians, energies, weighted p-norms and Rayleigh quotients.

Both sides share one shape: a signed matrix B, weights w_E on the rows of B and
weights w_N on the function's coordinates.

    vertex side     B = I^T   w_E = 1        w_N = deg
    hyperedge side  B = I     w_E = 1/deg    w_N = 1

with energy E_p(x) = sum w_E |Bx|^p, norm (sum w_N |x|^p)^(1/p) and
Delta_p x = diag(w_N)^-1 B^T (w_E * phi_p(Bx)), phi_p(t) = |t|^(p-1) sign(t).
"""

from enum import Enum
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

from .core import OrientedHypergraph
from .errors import DimensionError, DomainError, InputError, ZeroFunctionError


class Side(str, Enum):
    VERTEX = "vertex"
    HYPEREDGE = "hyperedge"


SideLike = Union[Side, str]


class SideView(NamedTuple):
    matrix: np.ndarray
    edge_weights: np.ndarray
    node_weights: np.ndarray


def as_side(side: SideLike) -> Side:
    try:
        return Side(side)
    except ValueError:
        raise InputError(f"side must be 'vertex' or 'hyperedge', got {side!r}")


@lru_cache(maxsize=256)
def side_view(graph: OrientedHypergraph, side: SideLike) -> SideView:
    """Matrix and weights describing ``side`` of ``graph`` (cached, read-only)."""
    side = as_side(side)
    incidence = graph.incidence_matrix.astype(float)
    degrees = graph.degrees.astype(float)
    if side is Side.VERTEX:
        view = SideView(np.ascontiguousarray(incidence.T), np.ones(graph.m), degrees)
    else:
        view = SideView(np.ascontiguousarray(incidence), 1.0 / degrees, np.ones(graph.m))
    for array in view:
        array.setflags(write=False)
    return view


def dimension(graph: OrientedHypergraph, side: SideLike) -> int:
    return graph.n if as_side(side) is Side.VERTEX else graph.m


def check_p(p: float, strict: bool = False) -> float:
    """Validate the exponent: p >= 1, or p > 1 when ``strict``."""
    p = float(p)
    if not np.isfinite(p) or p < 1 or (strict and p <= 1):
        bound = "> 1" if strict else ">= 1"
        raise DomainError(f"exponent p must be {bound}, got {p}")
    return p


def as_function(graph: OrientedHypergraph, x, side: SideLike) -> np.ndarray:
    """Coerce ``x`` to a finite float vector of the side's dimension."""
    values = np.asarray(x, dtype=float)
    expected = dimension(graph, side)
    if values.ndim != 1 or values.shape[0] != expected:
        raise DimensionError(
            f"{as_side(side).value} function must have length {expected}, got shape {values.shape}"
        )
    if not np.all(np.isfinite(values)):
        raise InputError("function values must be finite")
    return values


def require_nonzero(values: np.ndarray):
    if not np.any(values):
        raise ZeroFunctionError("function is identically zero")


def phi(t, p: float) -> np.ndarray:
    """|t|^(p-1) * sign(t), with phi(0) = 0 for every p >= 1."""
    t = np.asarray(t, dtype=float)
    if p == 1:
        return np.sign(t)
    if p == 2:
        return t.copy()
    return np.sign(t) * np.abs(t) ** (p - 1)


def _apply(matrix: np.ndarray, x: np.ndarray) -> np.ndarray:
    # Row sums through np.sum keep pairwise accumulation.
    return np.sum(matrix * x[np.newaxis, :], axis=1)


def boundary(graph: OrientedHypergraph, f) -> np.ndarray:
    """Per hyperedge: sum of f over inputs minus sum over outputs (I^T f)."""
    values = as_function(graph, f, Side.VERTEX)
    return _apply(side_view(graph, Side.VERTEX).matrix, values)


def coboundary(graph: OrientedHypergraph, gamma) -> np.ndarray:
    """Per vertex: gamma summed over hyperedges it inputs minus those it outputs (I gamma)."""
    values = as_function(graph, gamma, Side.HYPEREDGE)
    return _apply(side_view(graph, Side.HYPEREDGE).matrix, values)


def transform(graph: OrientedHypergraph, x, side: SideLike) -> np.ndarray:
    """B x for the chosen side."""
    side = as_side(side)
    return boundary(graph, x) if side is Side.VERTEX else coboundary(graph, x)


def energy_of(graph: OrientedHypergraph, p: float, x, side: SideLike) -> float:
    p = check_p(p)
    view = side_view(graph, side)
    values = as_function(graph, x, side)
    return float(np.sum(view.edge_weights * np.abs(_apply(view.matrix, values)) ** p))


def norm_of(graph: OrientedHypergraph, p: float, x, side: SideLike) -> float:
    p = check_p(p)
    view = side_view(graph, side)
    values = as_function(graph, x, side)
    return float(np.sum(view.node_weights * np.abs(values) ** p) ** (1.0 / p))


def energy(graph: OrientedHypergraph, p: float, f) -> float:
    """E_p(f) = sum over hyperedges of |boundary(f)_h|^p."""
    return energy_of(graph, p, f, Side.VERTEX)


def norm_p(graph: OrientedHypergraph, p: float, f) -> float:
    """Degree-weighted p-norm of a vertex function."""
    return norm_of(graph, p, f, Side.VERTEX)


def hyperedge_energy(graph: OrientedHypergraph, p: float, gamma) -> float:
    """sum over vertices of |coboundary(gamma)_i|^p / deg(i)."""
    return energy_of(graph, p, gamma, Side.HYPEREDGE)


def hyperedge_norm_p(graph: OrientedHypergraph, p: float, gamma) -> float:
    """Unweighted p-norm of a hyperedge function."""
    return norm_of(graph, p, gamma, Side.HYPEREDGE)


def rayleigh_quotient(graph: OrientedHypergraph, p: float, x, side: SideLike = Side.VERTEX) -> float:
    """Generalized Rayleigh quotient E_p(x) / ||x||_p^p."""
    p = check_p(p)
    view = side_view(graph, side)
    values = as_function(graph, x, side)
    require_nonzero(values)
    numerator = np.sum(view.edge_weights * np.abs(_apply(view.matrix, values)) ** p)
    denominator = np.sum(view.node_weights * np.abs(values) ** p)
    return float(numerator / denominator)


def apply_p_laplacian(graph: OrientedHypergraph, p: float, x, side: SideLike) -> np.ndarray:
    p = check_p(p, strict=True)
    view = side_view(graph, side)
    values = as_function(graph, x, side)
    flux = view.edge_weights * phi(_apply(view.matrix, values), p)
    return _apply(np.ascontiguousarray(view.matrix.T), flux) / view.node_weights


def apply_vertex_p_laplacian(graph: OrientedHypergraph, p: float, f) -> np.ndarray:
    """Normalized vertex p-Laplacian: D^-1 I phi_p(I^T f)."""
    return apply_p_laplacian(graph, p, f, Side.VERTEX)


def apply_hyperedge_p_laplacian(graph: OrientedHypergraph, p: float, gamma) -> np.ndarray:
    """Normalized hyperedge p-Laplacian: I^T D^-1 phi_p(I gamma)."""
    return apply_p_laplacian(graph, p, gamma, Side.HYPEREDGE)


def grad_rq(graph: OrientedHypergraph, p: float, x, side: SideLike = Side.VERTEX) -> np.ndarray:
    """
    Gradient of the Rayleigh quotient for p > 1.

    Vertex side: p * deg * (Delta_p f - RQ * phi_p(f)) / sum(deg |f|^p);
    the hyperedge side is the same expression with its own weights.
    """
    p = check_p(p, strict=True)
    view = side_view(graph, side)
    values = as_function(graph, x, side)
    require_nonzero(values)
    image = _apply(view.matrix, values)
    energy_value = np.sum(view.edge_weights * np.abs(image) ** p)
    mass = np.sum(view.node_weights * np.abs(values) ** p)
    quotient = energy_value / mass
    pulled = _apply(np.ascontiguousarray(view.matrix.T), view.edge_weights * phi(image, p))
    return p * (pulled - quotient * view.node_weights * phi(values, p)) / mass


def indicator(size: int, members) -> np.ndarray:
    """0/1 vector of length ``size`` supported on ``members``."""
    vector = np.zeros(size)
    vector[np.asarray(sorted(members), dtype=np.intp)] = 1.0
    return vector


def delta(size: int, index: int) -> np.ndarray:
    return indicator(size, [index])
