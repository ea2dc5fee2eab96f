"""
Eigenpairs of the vertex and hyperedge p-Laplacians.

What is computed, and how:

* p = 2: the full spectrum, from the symmetric generalized eigenproblem.
* p > 1: the smallest and largest eigenvalues, as extrema of the Rayleigh
  quotient, by multi-start projected gradient on the weighted p-sphere.
* p = 1: exact extrema of RQ_1 and linear-feasibility certificates of the
  coordinate eigen-conditions; p close to 1 is reached by continuation in p
  and rounded back to a certified 1-Laplacian eigenpair.
* any p: the smallest nonzero eigenvalue, via the kernel-shift characterization
  lambda_min = min over span(I^h) of E_p(f) / min_{g in kernel} ||f - g||_p^p.

Intermediate eigenvalues for p != 2 are deliberately not offered.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh, lstsq, svd
from scipy.optimize import linprog, minimize

from .config import (
    ARMIJO_C,
    ARMIJO_SHRINK,
    CONTINUATION_STAGES,
    DEFAULT_MAX_ITER,
    DEFAULT_MAX_WORKERS,
    DEFAULT_STARTS,
    DEFAULT_TOL_RESIDUAL,
    LP_FEASIBILITY_TOL,
    MAX_EXACT_DENOMINATOR,
    MIN_STEP,
    MULTIPLICITY_GAP,
    P1_ENUMERATION_LIMIT,
    P1_HEURISTIC_P,
    P1_ROUNDING_TOL,
    P1_SNAP_DENOMINATOR,
    RANK_THRESHOLD,
    SUBGRADIENT_MAX_ITER,
    ZERO_THRESHOLD_FACTOR,
    get_default_seed,
)
from .core import OrientedHypergraph
from .errors import DomainError, InputError, SizeLimitError
from .operators import (
    Side,
    SideLike,
    apply_p_laplacian,
    as_function,
    as_side,
    check_p,
    delta,
    dimension,
    grad_rq,
    norm_of,
    phi,
    rayleigh_quotient,
    require_nonzero,
    side_view,
    transform,
)
from .reporting import BoundReport
from .simplex import phase_one


@dataclass
class SolverConfig:
    """Knobs of the variational solvers; deterministic given ``seed``."""

    starts: int = DEFAULT_STARTS
    max_iter: int = DEFAULT_MAX_ITER
    tol_residual: float = DEFAULT_TOL_RESIDUAL
    armijo_c: float = ARMIJO_C
    armijo_shrink: float = ARMIJO_SHRINK
    max_workers: int = DEFAULT_MAX_WORKERS
    seed: Optional[int] = None

    def __post_init__(self):
        if self.seed is None:
            self.seed = get_default_seed()
        if int(self.starts) < 1:
            raise DomainError(f"starts must be >= 1, got {self.starts}")
        if int(self.max_iter) < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.tol_residual > 0:
            raise DomainError(f"tol_residual must be positive, got {self.tol_residual}")
        if not 0 < self.armijo_c < 1 or not 0 < self.armijo_shrink < 1:
            raise DomainError("Armijo parameters must lie in (0, 1)")
        if int(self.max_workers) < 1:
            raise DomainError(f"max_workers must be >= 1, got {self.max_workers}")
        if int(self.seed) < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")

    def generators(self, count: int) -> List[np.random.Generator]:
        """Independent generators, one per random start."""
        streams = np.random.SeedSequence(int(self.seed)).spawn(count)
        return [np.random.default_rng(stream) for stream in streams]

    def to_dict(self):
        return asdict(self)


@dataclass
class OneLapCertificate:
    """
    Multipliers witnessing a 1-Laplacian eigenpair, or a failed attempt.

    ``z_edge`` is indexed by hyperedges and ``z_vertex`` by vertices on both
    sides. ``slack`` is the largest violation of the balance equations (feasible)
    or the phase-one objective (infeasible).
    """

    feasible: bool
    value: float
    side: Side
    z_edge: Optional[np.ndarray]
    z_vertex: Optional[np.ndarray]
    slack: float
    exact: bool
    free_variables: int

    def __bool__(self):
        return self.feasible

    def to_dict(self):
        return {
            "feasible": self.feasible,
            "lambda": self.value,
            "side": self.side.value,
            "z_edge": None if self.z_edge is None else self.z_edge.tolist(),
            "z_vertex": None if self.z_vertex is None else self.z_vertex.tolist(),
            "slack": self.slack,
            "exact_arithmetic": self.exact,
            "free_variables": self.free_variables,
        }


@dataclass
class EigenPair:
    p: float
    side: Side
    value: float
    function: np.ndarray
    residual: float
    converged: bool = True
    index: Optional[int] = None  # 1-based position in the spectrum
    multiplicity: Optional[int] = None
    cluster_start: Optional[int] = None  # first index of the eigenvalue's cluster
    notes: List[str] = field(default_factory=list)
    certificate: Optional[OneLapCertificate] = None

    def to_dict(self):
        return {
            "p": self.p,
            "side": self.side.value,
            "value": self.value,
            "function": self.function.tolist(),
            "residual": self.residual,
            "converged": self.converged,
            "index": self.index,
            "multiplicity": self.multiplicity,
            "cluster_start": self.cluster_start,
            "notes": list(self.notes),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


@dataclass
class LambdaMinResult:
    p: float
    side: Side
    value: float
    function: np.ndarray
    kernel_dimension: int
    converged: bool
    coefficients: np.ndarray = field(repr=False, default=None)
    certificate: Optional[OneLapCertificate] = None  # p = 1 only

    def to_dict(self):
        return {
            "p": self.p,
            "side": self.side.value,
            "value": self.value,
            "function": self.function.tolist(),
            "kernel_dimension": self.kernel_dimension,
            "converged": self.converged,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


@dataclass
class LambdaMinBounds:
    p: float
    restricted_minimum: float  # min of RQ_p over span(I^h), no kernel shift
    lambda2_min: float
    large_p_branch: float  # |H|^(1-p/2) lambda2_min^(p/2), valid for p >= 2
    small_p_branch: float  # vol(V)^(p/2-1) lambda2_min^(p/2), valid for p <= 2

    @property
    def applicable_branch(self) -> float:
        if self.p > 2:
            return self.large_p_branch
        if self.p < 2:
            return self.small_p_branch
        return max(self.large_p_branch, self.small_p_branch)

    def to_dict(self):
        data = asdict(self)
        data["applicable_branch"] = self.applicable_branch
        return data


def _canonical_sign(vector: np.ndarray) -> np.ndarray:
    """Flip so the first entry of (nearly) maximal magnitude is positive."""
    magnitude = np.abs(vector)
    top = magnitude.max()
    if top == 0:
        return vector
    lead = int(np.argmax(magnitude >= top * (1 - 1e-9)))
    return -vector if vector[lead] < 0 else vector


def _clusters(values: np.ndarray) -> List[Tuple[int, int]]:
    """(first 1-based index, size) of the cluster containing each sorted value."""
    starts = [0]
    for k in range(1, len(values)):
        if values[k] - values[k - 1] > MULTIPLICITY_GAP:
            starts.append(k)
    bounds = starts + [len(values)]
    out = []
    for first, stop in zip(bounds[:-1], bounds[1:]):
        out.extend([(first + 1, stop - first)] * (stop - first))
    return out


def residual(graph: OrientedHypergraph, p: float, value: float, x,
             side: SideLike = Side.VERTEX) -> float:
    """sup-norm of Delta_p x - value * phi_p(x), divided by ||x||_inf^(p-1)."""
    p = check_p(p, strict=True)
    values = as_function(graph, x, side)
    require_nonzero(values)
    gap = apply_p_laplacian(graph, p, values, side) - value * phi(values, p)
    return float(np.max(np.abs(gap)) / np.max(np.abs(values)) ** (p - 1))


def spectrum_p2(graph: OrientedHypergraph, side: SideLike = Side.VERTEX) -> List[EigenPair]:
    """
    All eigenpairs of the p = 2 operator, values ascending.

    Vertex side solves I I^T f = lambda D f; hyperedge side solves
    I^T D^-1 I gamma = lambda gamma. Vectors are normalized in the side's
    weighted 2-norm.
    """
    side = as_side(side)
    view = side_view(graph, side)
    stiffness = view.matrix.T @ (view.edge_weights[:, np.newaxis] * view.matrix)
    values, vectors = eigh(stiffness, np.diag(view.node_weights))
    clusters = _clusters(values)

    pairs = []
    for k, value in enumerate(values):
        vector = _canonical_sign(np.array(vectors[:, k]))
        first, size = clusters[k]
        pairs.append(EigenPair(
            p=2.0,
            side=side,
            value=float(value),
            function=vector,
            residual=residual(graph, 2.0, float(value), vector, side),
            index=k + 1,
            multiplicity=size,
            cluster_start=first,
        ))
    return pairs


def _project(graph: OrientedHypergraph, p: float, side: Side, x: np.ndarray) -> np.ndarray:
    return x / norm_of(graph, p, x, side)


@dataclass
class _Descent:
    x: np.ndarray
    objective: float
    stationarity: float
    iterations: int
    converged: bool


def projected_descent(objective: Callable, gradient: Callable, normalize: Callable,
                      stationarity: Callable, x0: np.ndarray, cfg: SolverConfig) -> _Descent:
    """
    Gradient descent for a zero-homogeneous objective, re-normalized after every step.

    Steps start from the Barzilai-Borwein length and are cut back until the
    Armijo condition holds. Stops when ``stationarity(x, g) < cfg.tol_residual``.
    """
    x = normalize(np.asarray(x0, dtype=float))
    value = objective(x)
    g = gradient(x)
    step = 1.0 / max(float(np.linalg.norm(g)), 1e-12)
    measure = stationarity(x, g)

    for iteration in range(cfg.max_iter):
        if measure < cfg.tol_residual:
            return _Descent(x, value, measure, iteration, True)
        slope = float(g @ g)
        if slope == 0.0:
            break
        t = step
        while True:
            candidate = normalize(x - t * g)
            candidate_value = objective(candidate)
            if candidate_value <= value - cfg.armijo_c * t * slope:
                break
            t *= cfg.armijo_shrink
            if t < MIN_STEP:
                logging.debug(f"line search stalled at iteration {iteration}")
                return _Descent(x, value, measure, iteration, False)
        g_next = gradient(candidate)
        s, y = candidate - x, g_next - g
        curvature = float(s @ y)
        step = abs(float(s @ s) / curvature) if curvature != 0 else t / cfg.armijo_shrink
        step = min(max(step, MIN_STEP), 1e12)
        x, value, g = candidate, candidate_value, g_next
        measure = stationarity(x, g)

    return _Descent(x, value, measure, cfg.max_iter, measure < cfg.tol_residual)


def subgradient_descent(objective: Callable, subgradient: Callable, normalize: Callable,
                        x0: np.ndarray, max_iter: int, step0: float = 0.5) -> _Descent:
    """Normalized subgradient steps with step0/sqrt(k+1) lengths; keeps the best point."""
    x = normalize(np.asarray(x0, dtype=float))
    best_x, best_value = x, objective(x)
    for k in range(max_iter):
        g = subgradient(x)
        size = float(np.linalg.norm(g))
        if size == 0.0:
            return _Descent(x, objective(x), 0.0, k, True)
        x = normalize(x - step0 / np.sqrt(k + 1) * g / size)
        value = objective(x)
        if value < best_value:
            best_x, best_value = x, value
    return _Descent(best_x, best_value, float("nan"), max_iter, False)


def _run_starts(task: Callable, starts: Sequence[np.ndarray], cfg: SolverConfig) -> List:
    """Run ``task`` on every start, in parallel, results in start order."""
    results = [None] * len(starts)
    with ThreadPoolExecutor(max_workers=cfg.max_workers) as executor:
        future_to_index = {executor.submit(task, x0): idx for idx, x0 in enumerate(starts)}
        for future in as_completed(future_to_index):
            results[future_to_index[future]] = future.result()
    return results


def _check_which(which: str) -> str:
    if which not in ("min", "max"):
        raise InputError(f"which must be 'min' or 'max', got {which!r}")
    return which


def _descend(graph: OrientedHypergraph, p: float, side: Side, sign: float,
             x0: np.ndarray, cfg: SolverConfig) -> _Descent:
    def objective(x):
        return sign * rayleigh_quotient(graph, p, x, side)

    def gradient(x):
        return sign * grad_rq(graph, p, x, side)

    def stationarity(x, g):
        return residual(graph, p, rayleigh_quotient(graph, p, x, side), x, side)

    return projected_descent(objective, gradient, lambda x: _project(graph, p, side, x),
                             stationarity, x0, cfg)


def _continuation_starts(graph: OrientedHypergraph, p: float, side: Side, which: str,
                         cfg: SolverConfig) -> List[np.ndarray]:
    """
    Warm starts for p below the first continuation stage.

    The extremal function of the first stage is carried down the remaining
    stages, one descent each. For the minimum the exact p = 1 minimizer joins
    while orthant enumeration is within its limit.
    """
    stages = [q for q in CONTINUATION_STAGES if q > p]
    sign = 1.0 if which == "min" else -1.0
    x = extremal_eigenpair(graph, stages[0], side, which, cfg).function
    for q in stages[1:]:
        x = _descend(graph, q, side, sign, x, cfg).x
    starts = [x]
    if which == "min" and dimension(graph, side) <= P1_ENUMERATION_LIMIT:
        starts.append(extremal_rq1(graph, side, "min").function)
    logging.debug(f"continuation {stages} -> p={p} gives {len(starts)} warm starts")
    return starts


def extremal_eigenpair(graph: OrientedHypergraph, p: float, side: SideLike = Side.VERTEX,
                       which: str = "min", cfg: Optional[SolverConfig] = None) -> EigenPair:
    """
    Smallest or largest eigenpair for p > 1 as the extremum of RQ_p.

    The start pool is the p = 2 extremal eigenvector, every delta function and
    then random Gaussian vectors up to ``cfg.starts``. Below the first of
    CONTINUATION_STAGES the pool is led by warm starts traced down from that
    stage (see ``_continuation_starts``). The best start by objective wins
    (ties: lower residual, then lower start index). A best start whose residual
    stays above ``cfg.tol_residual`` is returned with ``converged=False``.
    """
    p = check_p(p, strict=True)
    side = as_side(side)
    which = _check_which(which)
    cfg = cfg or SolverConfig()
    dim = dimension(graph, side)
    sign = 1.0 if which == "min" else -1.0

    spectrum = spectrum_p2(graph, side)
    seed_pair = spectrum[0] if which == "min" else spectrum[-1]
    starts = [seed_pair.function.copy()] + [delta(dim, k) for k in range(dim)]
    extra = max(cfg.starts - (dim + 1), 0)
    starts += [rng.standard_normal(dim) for rng in cfg.generators(extra)]
    if p < CONTINUATION_STAGES[0]:
        starts = _continuation_starts(graph, p, side, which, cfg) + starts

    def run(x0):
        return _descend(graph, p, side, sign, x0, cfg)

    logging.info(f"Solving {which} {side.value} eigenpair at p={p} from {len(starts)} starts")
    runs = _run_starts(run, starts, cfg)
    best = min(range(len(runs)),
               key=lambda k: (round(runs[k].objective, 12), runs[k].stationarity, k))
    chosen = runs[best]
    function = _canonical_sign(chosen.x)
    value = rayleigh_quotient(graph, p, function, side)
    res = residual(graph, p, value, function, side)
    converged = res < cfg.tol_residual

    notes = [f"best of {len(starts)} starts (start {best}, {chosen.iterations} iterations)"]
    if not converged:
        logging.warning(f"{which} {side.value} eigenpair at p={p} did not converge: residual {res:.3e}")
        notes.append("not converged: residual above tolerance")
    return EigenPair(
        p=p,
        side=side,
        value=value,
        function=function,
        residual=res,
        converged=converged,
        index=1 if which == "min" else dim,
        notes=notes,
    )


def _as_rational(value) -> Optional[Fraction]:
    """A small-denominator Fraction equal to ``value`` (to 1e-12 relative), else None."""
    if isinstance(value, (int, np.integer, Fraction)):
        return Fraction(value)
    value = float(value)
    candidate = Fraction(value).limit_denominator(MAX_EXACT_DENOMINATOR)
    if abs(float(candidate) - value) <= 1e-12 * max(1.0, abs(value)):
        return candidate
    return None


def _balance_coefficients(graph: OrientedHypergraph, side: Side, value, exact: bool) -> np.ndarray:
    """
    Coefficients of the balance equations, one row per coordinate k:

        sum_r B[r, k] w_E[r] z_r - value w_N[k] z_k = 0

    over the unknowns (z_r for rows of B, then z_k for coordinates).
    """
    incidence = graph.incidence_matrix
    degrees = [int(d) for d in graph.degrees]
    matrix = incidence.T if side is Side.VERTEX else incidence
    rows, cols = matrix.shape
    one = Fraction(1) if exact else 1.0

    def edge_weight(r):
        if side is Side.VERTEX:
            return one
        return Fraction(1, degrees[r]) if exact else 1.0 / degrees[r]

    def node_weight(k):
        if side is Side.VERTEX:
            return Fraction(degrees[k]) if exact else float(degrees[k])
        return one

    coefficients = np.empty((cols, rows + cols), dtype=object if exact else float)
    coefficients[:, :] = Fraction(0) if exact else 0.0
    for k in range(cols):
        for r in range(rows):
            if matrix[r, k]:
                coefficients[k, r] = int(matrix[r, k]) * edge_weight(r)
        coefficients[k, rows + k] = -value * node_weight(k)
    return coefficients


def verify_1lap_eigenpair(graph: OrientedHypergraph, value, x, side: SideLike = Side.VERTEX,
                          zero_tol: Optional[float] = None) -> OneLapCertificate:
    """
    Certify (value, x) as an eigenpair of the 1-Laplacian.

    Multipliers are fixed to the sign of the coordinate (or of B x) wherever it
    is nonzero; the remaining ones range over [-1, 1] and are found by a
    phase-one simplex. Exact rational arithmetic is used when ``value`` is a
    small-denominator rational. Infeasibility is an answer, not an error.
    """
    side = as_side(side)
    values = as_function(graph, x, side)
    require_nonzero(values)
    if float(value) < 0:
        raise DomainError(f"eigenvalue must be non-negative, got {value}")

    image = transform(graph, values, side)
    if zero_tol is None:
        zero_tol = ZERO_THRESHOLD_FACTOR * float(np.max(np.abs(values)))
    row_signs = np.where(np.abs(image) > zero_tol, np.sign(image), 0).astype(int)
    coord_signs = np.where(np.abs(values) > zero_tol, np.sign(values), 0).astype(int)
    fixed = np.concatenate([np.abs(row_signs) > 0, np.abs(coord_signs) > 0])
    fixed_values = np.concatenate([row_signs, coord_signs])

    rational = _as_rational(value)
    exact = rational is not None
    lam = rational if exact else float(value)
    coefficients = _balance_coefficients(graph, side, lam, exact)
    rows = len(row_signs)

    free = np.flatnonzero(~fixed)
    pinned = np.flatnonzero(fixed)
    rhs_fixed = coefficients[:, pinned] @ np.array(fixed_values[pinned], dtype=object if exact else float) \
        if len(pinned) else np.zeros(coefficients.shape[0], dtype=object if exact else float)

    solution = np.array(fixed_values, dtype=object if exact else float)
    if len(free) == 0:
        violation = max(abs(float(v)) for v in rhs_fixed)
        feasible = all(v == 0 for v in rhs_fixed) if exact else violation <= LP_FEASIBILITY_TOL
        slack = violation
    else:
        # z = 2y - 1 with 0 <= y <= 1, slack s with y + s = 1.
        block = coefficients[:, free]
        nfree = len(free)
        eq_rows = block.shape[0]
        A = np.empty((eq_rows + nfree, 2 * nfree), dtype=object if exact else float)
        A[:, :] = Fraction(0) if exact else 0.0
        A[:eq_rows, :nfree] = 2 * block
        for j in range(nfree):
            A[eq_rows + j, j] = 1
            A[eq_rows + j, nfree + j] = 1
        b = np.empty(eq_rows + nfree, dtype=object if exact else float)
        b[:eq_rows] = block.sum(axis=1) - rhs_fixed
        b[eq_rows:] = 1
        outcome = phase_one(A, b, exact=exact)
        feasible = outcome.feasible
        slack = outcome.infeasibility
        if feasible:
            solution[free] = 2 * outcome.x[:nfree] - 1
            slack = max(abs(float(v)) for v in coefficients @ solution)

    if not feasible:
        logging.info(f"No 1-Laplacian certificate for lambda={float(value)!r} on the {side.value} side")
        return OneLapCertificate(False, float(value), side, None, None, float(slack), exact, len(free))

    z = np.array([float(v) for v in solution])
    z_rows, z_coords = z[:rows], z[rows:]
    if side is Side.VERTEX:
        z_edge, z_vertex = z_rows, z_coords
    else:
        z_edge, z_vertex = z_coords, z_rows
    return OneLapCertificate(True, float(value), side, z_edge, z_vertex, float(slack), exact, len(free))


def _delta_quotients(graph: OrientedHypergraph) -> List[Fraction]:
    """sum over i in h of 1/deg(i), exactly, per hyperedge."""
    degrees = [int(d) for d in graph.degrees]
    return [sum((Fraction(1, degrees[i]) for i in h.members), Fraction(0)) for h in graph.hyperedges]


def _orthant_lp(view, signs: np.ndarray) -> Optional[Tuple[float, np.ndarray]]:
    """
    min of RQ_1 over the closed orthant of ``signs`` by one linear program.

    A zero sign pins its coordinate to zero. None when the LP fails.
    """
    matrix = view.matrix
    rows, dim = matrix.shape
    # Variables: x (dim), u (rows), v (rows); B x - u + v = 0, sum w_N s x = 1.
    cost = np.concatenate([np.zeros(dim), view.edge_weights, view.edge_weights])
    A_eq = np.zeros((rows + 1, dim + 2 * rows))
    A_eq[:rows, :dim] = matrix
    A_eq[:rows, dim:dim + rows] = -np.eye(rows)
    A_eq[:rows, dim + rows:] = np.eye(rows)
    A_eq[-1, :dim] = view.node_weights * signs
    b_eq = np.zeros(rows + 1)
    b_eq[-1] = 1.0
    bounds = [(0, None) if s > 0 else (None, 0) if s < 0 else (0, 0) for s in signs]
    bounds += [(0, None)] * (2 * rows)
    result = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if result.status != 0:
        return None
    x = np.array(result.x[:dim])
    x[np.abs(x) < 1e-12 * np.max(np.abs(x))] = 0.0
    return float(result.fun), x


def _orthant_minimum(graph: OrientedHypergraph, side: Side) -> Tuple[float, np.ndarray]:
    """min of RQ_1 by one linear program per sign orthant (first coordinate fixed >= 0)."""
    view = side_view(graph, side)
    dim = view.matrix.shape[1]
    if dim > P1_ENUMERATION_LIMIT:
        raise SizeLimitError("p=1 orthant enumeration", dim, P1_ENUMERATION_LIMIT)

    best_value, best_x = np.inf, None
    for code in range(2 ** (dim - 1)):
        signs = np.array([1.0] + [(-1.0 if (code >> (k - 1)) & 1 else 1.0) for k in range(1, dim)])
        solved = _orthant_lp(view, signs)
        if solved is not None and solved[0] < best_value - 1e-12:
            best_value, best_x = solved
    return best_value, best_x


def round_to_one_laplacian(graph: OrientedHypergraph, x, side: SideLike = Side.VERTEX,
                           round_tol: float = P1_ROUNDING_TOL) -> EigenPair:
    """
    Round a function to a certified 1-Laplacian candidate.

    Entries below ``round_tol * max|x|`` become zero and the signs of the rest
    fix a closed orthant. The candidate minimizes RQ_1 over that orthant (one
    LP) and is then certified. Applied to the smallest p-eigenfunction for p
    close to 1 it yields the limiting 1-Laplacian eigenpair.
    """
    side = as_side(side)
    values = as_function(graph, x, side)
    require_nonzero(values)
    scale = float(np.max(np.abs(values)))
    signs = np.where(np.abs(values) > round_tol * scale, np.sign(values), 0.0)
    solved = _orthant_lp(side_view(graph, side), signs)
    function = _canonical_sign(values * (signs != 0) if solved is None else solved[1])
    value = rayleigh_quotient(graph, 1.0, function, side)
    certificate = verify_1lap_eigenpair(graph, value, function, side)

    notes = ["minimum of RQ_1 over the sign pattern of the rounded function"]
    if not certificate.feasible:
        notes.append("certificate infeasible")
    return EigenPair(
        p=1.0,
        side=side,
        value=value,
        function=function,
        residual=0.0 if certificate.feasible else float("inf"),
        converged=certificate.feasible,
        index=1,
        notes=notes,
        certificate=certificate,
    )


def extremal_rq1(graph: OrientedHypergraph, side: SideLike = Side.VERTEX,
                 which: str = "max", heuristic: bool = False,
                 cfg: Optional[SolverConfig] = None) -> EigenPair:
    """
    Exact extremes of RQ_1 with a 1-Laplacian certificate.

    max, vertex side: 1, attained by every delta.
    max, hyperedge side: max_h sum_{i in h} 1/deg(i), attained by the delta of the argmax.
    min, nontrivial kernel: 0, attained by a kernel vector.
    min, otherwise: exhaustive over sign orthants, one LP each. Above
    P1_ENUMERATION_LIMIT this raises SizeLimitError unless ``heuristic``, which
    rounds the continuation minimizer at p = P1_HEURISTIC_P instead (an upper
    bound, flagged in the notes).
    """
    side = as_side(side)
    which = _check_which(which)
    dim = dimension(graph, side)
    notes = []

    if which == "max":
        if side is Side.VERTEX:
            exact_value, function = Fraction(1), delta(dim, 0)
        else:
            quotients = _delta_quotients(graph)
            top = max(quotients)
            function = delta(dim, quotients.index(top))
            exact_value = top
        value = float(exact_value)
        certificate = verify_1lap_eigenpair(graph, exact_value, function, side)
    else:
        kernel = _split(graph, side).kernel
        if kernel.shape[1] > 0:
            function = _canonical_sign(kernel[:, 0].copy())
            function[np.abs(function) < 1e-12 * np.max(np.abs(function))] = 0.0
            value = 0.0
            certificate = verify_1lap_eigenpair(graph, Fraction(0), function, side)
        elif dim > P1_ENUMERATION_LIMIT and heuristic:
            near = extremal_eigenpair(graph, P1_HEURISTIC_P, side, "min", cfg)
            rounded = round_to_one_laplacian(graph, near.function, side)
            function, value, certificate = rounded.function, rounded.value, rounded.certificate
            logging.warning(f"p=1 minimum on the {side.value} side rounded from p={P1_HEURISTIC_P} "
                            f"(dimension {dim} above enumeration limit {P1_ENUMERATION_LIMIT})")
            notes.append(f"heuristic: rounded from p={P1_HEURISTIC_P}, an upper bound on the minimum")
        else:
            _, function = _orthant_minimum(graph, side)
            value = rayleigh_quotient(graph, 1.0, function, side)
            certificate = verify_1lap_eigenpair(graph, value, function, side)

    if not certificate.feasible:
        logging.warning(f"p=1 {which} on the {side.value} side could not be certified")
        notes.append("certificate infeasible")
    return EigenPair(
        p=1.0,
        side=side,
        value=value,
        function=function,
        residual=0.0 if certificate.feasible else float("inf"),
        converged=certificate.feasible,
        index=1 if which == "min" else dim,
        notes=notes,
        certificate=certificate,
    )


def certified_extremes(graph: OrientedHypergraph, p: float, side: SideLike = Side.VERTEX,
                       cfg: Optional[SolverConfig] = None,
                       heuristic: bool = False) -> Tuple[EigenPair, EigenPair]:
    """(smallest, largest) eigenpair: dense at p = 2, exact at p = 1, variational otherwise."""
    p = check_p(p)
    side = as_side(side)
    if p == 2:
        spectrum = spectrum_p2(graph, side)
        return spectrum[0], spectrum[-1]
    if p == 1:
        return (extremal_rq1(graph, side, "min", heuristic, cfg),
                extremal_rq1(graph, side, "max"))
    return (extremal_eigenpair(graph, p, side, "min", cfg),
            extremal_eigenpair(graph, p, side, "max", cfg))


def delta_bounds(graph: OrientedHypergraph, p: float, side: SideLike,
                 extremes: Tuple[EigenPair, EigenPair]) -> List[BoundReport]:
    """lambda_1 <= 1 <= lambda_n (vertex) or mu_1 <= min_h Q_h, max_h Q_h <= mu_m (hyperedge)."""
    side = as_side(side)
    low, high = extremes
    if side is Side.VERTEX:
        return [BoundReport("delta_sandwich", low.value, high.value, middle=1.0,
                            witness="delta function on any vertex",
                            details={"p": p})]
    quotients = [float(q) for q in _delta_quotients(graph)]
    argmin, argmax = int(np.argmin(quotients)), int(np.argmax(quotients))
    return [
        BoundReport("hyperedge_delta_lower", low.value, quotients[argmin],
                    witness=f"delta on hyperedge {argmin + 1}", details={"p": p}),
        BoundReport("hyperedge_delta_upper", quotients[argmax], high.value,
                    witness=f"delta on hyperedge {argmax + 1}", details={"p": p}),
    ]


# Smallest nonzero eigenvalue


@dataclass
class _SpanSplit:
    span: np.ndarray  # orthonormal basis of range(B^T), columns
    kernel: np.ndarray  # orthonormal basis of ker(B), columns


def _split(graph: OrientedHypergraph, side: Side) -> _SpanSplit:
    matrix = side_view(graph, side).matrix
    _, sigma, vh = svd(matrix, full_matrices=True)
    rank = int(np.sum(sigma > RANK_THRESHOLD * sigma.max()))
    return _SpanSplit(span=vh[:rank].T.copy(), kernel=vh[rank:].T.copy())


def kernel_dimension(graph: OrientedHypergraph, side: SideLike = Side.VERTEX) -> int:
    """dim ker(B), the multiplicity of the zero eigenvalue for every p."""
    return _split(graph, as_side(side)).kernel.shape[1]


def shifted_norm(kernel: np.ndarray, weights: np.ndarray, p: float, f: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    min over g in span(kernel) of sum w |f - g|^p, and the minimizing f - g.

    Weighted least squares at p = 2, BFGS with an analytic gradient for p > 1,
    and a weighted L1-regression LP at p = 1.
    """
    if kernel.shape[1] == 0:
        return float(np.sum(weights * np.abs(f) ** p)), f.copy()

    root = np.sqrt(weights)
    coef, *_ = lstsq(root[:, np.newaxis] * kernel, root * f)
    if p == 2:
        rest = f - kernel @ coef
        return float(np.sum(weights * rest ** 2)), rest

    if p == 1:
        dim, kd = kernel.shape
        cost = np.concatenate([np.zeros(kd), weights, weights])
        A_eq = np.hstack([kernel, np.eye(dim), -np.eye(dim)])
        bounds = [(None, None)] * kd + [(0, None)] * (2 * dim)
        result = linprog(cost, A_eq=A_eq, b_eq=f, bounds=bounds, method="highs")
        if result.status == 0:
            coef = result.x[:kd]
        rest = f - kernel @ coef
        return float(np.sum(weights * np.abs(rest))), rest

    def fun(c):
        rest = f - kernel @ c
        return float(np.sum(weights * np.abs(rest) ** p)), -p * kernel.T @ (weights * phi(rest, p))

    start_value = fun(coef)[0]
    result = minimize(fun, coef, jac=True, method="BFGS", options={"gtol": 1e-12, "maxiter": 1000})
    if result.fun < start_value:
        coef = result.x
    rest = f - kernel @ coef
    return float(np.sum(weights * np.abs(rest) ** p)), rest


def _span_minimization(graph: OrientedHypergraph, p: float, side: Side, split: _SpanSplit,
                       shifted: bool, starts: Sequence[np.ndarray],
                       cfg: SolverConfig) -> Tuple[_Descent, int]:
    """Minimize E_p(S a) / N(S a) over unit coefficient vectors a; returns best run and its start."""
    view = side_view(graph, side)
    span, kernel = split.span, split.kernel
    if not shifted:
        kernel = kernel[:, :0]

    def quotient_with_gradient(a):
        f = span @ a
        image = view.matrix @ f
        energy = float(np.sum(view.edge_weights * np.abs(image) ** p))
        mass, rest = shifted_norm(kernel, view.node_weights, p, f)
        ratio = energy / mass
        grad_e = p * span.T @ (view.matrix.T @ (view.edge_weights * phi(image, p)))
        grad_n = p * span.T @ (view.node_weights * phi(rest, p))
        return ratio, (grad_e - ratio * grad_n) / mass

    def normalize(a):
        return a / np.linalg.norm(a)

    def task(a0):
        # One-entry memo per start; workers never share it.
        memo = {}

        def evaluate(a):
            key = a.tobytes()
            if key not in memo:
                memo.clear()
                memo[key] = quotient_with_gradient(a)
            return memo[key]

        if p == 1:
            return subgradient_descent(lambda a: evaluate(a)[0], lambda a: evaluate(a)[1],
                                       normalize, a0, min(cfg.max_iter, SUBGRADIENT_MAX_ITER))
        return projected_descent(lambda a: evaluate(a)[0], lambda a: evaluate(a)[1], normalize,
                                 lambda a, g: float(np.linalg.norm(g)) / max(1.0, evaluate(a)[0]),
                                 a0, cfg)

    runs = _run_starts(task, starts, cfg)
    best = min(range(len(runs)), key=lambda k: (round(runs[k].objective, 12), k))
    return runs[best], best


def _span_starts(graph: OrientedHypergraph, side: Side, split: _SpanSplit,
                 cfg: SolverConfig, leading: Optional[np.ndarray] = None) -> List[np.ndarray]:
    rank = split.span.shape[1]
    d = split.kernel.shape[1]
    starts = [] if leading is None else [leading]
    for pair in spectrum_p2(graph, side)[d:]:
        a = split.span.T @ pair.function
        if np.linalg.norm(a) > 1e-12:
            starts.append(a)
    extra = max(cfg.starts - len(starts), 0)
    starts += [rng.standard_normal(rank) for rng in cfg.generators(extra)]
    return starts


def lambda_min_smallest_nonzero(graph: OrientedHypergraph, p: float, side: SideLike = Side.VERTEX,
                                cfg: Optional[SolverConfig] = None) -> LambdaMinResult:
    """
    Smallest nonzero eigenvalue through the kernel-shift quotient.

    d = dim ker(B) is found by SVD (singular values below RANK_THRESHOLD * sigma_max
    count as zero); the outer minimization runs over the unit sphere of
    coefficients in an orthonormal basis of the span, starting from the p = 2
    eigenvectors beyond the kernel (exact at p = 2) and random vectors.

    At p = 1 the subgradient loop has no stationarity measure; the result is
    converged exactly when the shifted minimizer certifies as a 1-Laplacian
    eigenpair.
    """
    p = check_p(p)
    side = as_side(side)
    cfg = cfg or SolverConfig()
    split = _split(graph, side)
    d = split.kernel.shape[1]
    if split.span.shape[1] == 0:
        raise InputError("the operator is zero; there is no nonzero eigenvalue")

    starts = _span_starts(graph, side, split, cfg)
    logging.info(f"Computing smallest nonzero {side.value} eigenvalue at p={p} (kernel dimension {d})")
    run, _ = _span_minimization(graph, p, side, split, True, starts, cfg)
    function = _canonical_sign(split.span @ run.x)
    value, converged, certificate = float(run.objective), bool(run.converged), None
    if p == 1:
        value, certificate = _certify_shifted_minimizer(graph, side, split, function, value)
        converged = certificate.feasible
        if not converged:
            logging.warning("smallest nonzero eigenvalue at p=1 could not be certified")
    elif not converged:
        logging.warning(f"smallest nonzero eigenvalue at p={p} did not reach stationarity tolerance")
    return LambdaMinResult(
        p=p,
        side=side,
        value=value,
        function=function,
        kernel_dimension=d,
        converged=converged,
        coefficients=run.x,
        certificate=certificate,
    )


def _snap_p1(value: float) -> Optional[Fraction]:
    candidate = Fraction(value).limit_denominator(P1_SNAP_DENOMINATOR)
    if abs(float(candidate) - value) <= P1_ROUNDING_TOL * max(1.0, abs(value)):
        return candidate
    return None


def _certify_shifted_minimizer(graph: OrientedHypergraph, side: Side, split: _SpanSplit,
                               function: np.ndarray, value: float) -> Tuple[float, OneLapCertificate]:
    """
    Certify the p = 1 kernel-shift minimizer as a 1-Laplacian eigenpair.

    The eigenfunction is f - g* for the best kernel shift g*, rounded at
    P1_ROUNDING_TOL. A value within the same tolerance of a fraction with
    denominator up to P1_SNAP_DENOMINATOR is certified (and returned) exactly.
    """
    view = side_view(graph, side)
    _, rest = shifted_norm(split.kernel, view.node_weights, 1.0, function)
    scale = float(np.max(np.abs(rest)))
    rest = np.where(np.abs(rest) < P1_ROUNDING_TOL * scale, 0.0, rest)
    snapped = _snap_p1(value)
    certificate = verify_1lap_eigenpair(graph, value if snapped is None else snapped, rest, side,
                                        zero_tol=P1_ROUNDING_TOL * scale)
    if certificate.feasible and snapped is not None:
        value = float(snapped)
    return value, certificate


def lambda_min_lower_bound(graph: OrientedHypergraph, p: float, cfg: Optional[SolverConfig] = None,
                           lambda_min: Optional[LambdaMinResult] = None) -> LambdaMinBounds:
    """
    Lower bounds for the smallest nonzero vertex eigenvalue.

    ``restricted_minimum`` minimizes RQ_p over span(I^h) without the kernel
    shift, starting at the lambda_min minimizer so it never exceeds the computed
    lambda_min. The p <-> 2 branches compare against the dense p = 2 value.
    """
    p = check_p(p)
    cfg = cfg or SolverConfig()
    split = _split(graph, Side.VERTEX)
    if lambda_min is None:
        lambda_min = lambda_min_smallest_nonzero(graph, p, Side.VERTEX, cfg)
    starts = _span_starts(graph, Side.VERTEX, split, cfg, leading=lambda_min.coefficients)
    run, _ = _span_minimization(graph, p, Side.VERTEX, split, False, starts, cfg)

    d = split.kernel.shape[1]
    lambda2 = spectrum_p2(graph, Side.VERTEX)[d].value
    m, vol = graph.m, graph.total_volume
    return LambdaMinBounds(
        p=p,
        restricted_minimum=float(run.objective),
        lambda2_min=float(lambda2),
        large_p_branch=float(m ** (1 - p / 2) * lambda2 ** (p / 2)),
        small_p_branch=float(vol ** (p / 2 - 1) * lambda2 ** (p / 2)),
    )


def lambda_min_bound_reports(graph: OrientedHypergraph, p: float, cfg: Optional[SolverConfig] = None,
                             lambda_min: Optional[LambdaMinResult] = None) -> List[BoundReport]:
    cfg = cfg or SolverConfig()
    lam = lambda_min or lambda_min_smallest_nonzero(graph, p, Side.VERTEX, cfg)
    bounds = lambda_min_lower_bound(graph, p, cfg, lam)
    notes = [] if lam.converged else ["lambda_min not converged"]
    return [
        BoundReport("lambda_min_restricted_rq", bounds.restricted_minimum, lam.value,
                    witness="minimum of RQ_p over span(I^h)", notes=list(notes),
                    details={"p": p}),
        BoundReport("lambda_min_p2_comparison", bounds.applicable_branch, lam.value,
                    witness="p <-> 2 comparison with the dense p = 2 value", notes=list(notes),
                    details=bounds.to_dict()),
    ]


def lambda_min_ratio_bounds(graph: OrientedHypergraph, p: float, q: float,
                            cfg: Optional[SolverConfig] = None,
                            values: Optional[Tuple[float, float]] = None) -> BoundReport:
    """
    |H|^(1/p - 1/q) <= lambda_p^(1/p) / lambda_q^(1/q) <= vol(V)^(1/q - 1/p) for p >= q.

    ``values`` may carry precomputed (lambda_p, lambda_q).
    """
    p, q = check_p(p), check_p(q)
    if p < q:
        p, q = q, p
        if values is not None:
            values = (values[1], values[0])
    if values is None:
        cfg = cfg or SolverConfig()
        values = (lambda_min_smallest_nonzero(graph, p, Side.VERTEX, cfg).value,
                  lambda_min_smallest_nonzero(graph, q, Side.VERTEX, cfg).value)
    ratio = values[0] ** (1 / p) / values[1] ** (1 / q)
    return BoundReport(
        "lambda_min_continuity",
        lhs=graph.m ** (1 / p - 1 / q),
        middle=ratio,
        rhs=graph.total_volume ** (1 / q - 1 / p),
        witness=f"p={p}, q={q}",
        details={"p": p, "q": q, "lambda_p": values[0], "lambda_q": values[1]},
    )
