"""
Phase-one simplex for linear feasibility problems A x = b, x >= 0.

The tableau is a numpy array of floats or, for exact arithmetic, of
``fractions.Fraction`` objects (dtype=object). Pivoting follows Bland's rule so
degenerate problems terminate.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .config import LP_FEASIBILITY_TOL


@dataclass
class FeasibilityResult:
    feasible: bool
    x: Optional[np.ndarray]
    infeasibility: float  # phase-one objective at termination
    exact: bool
    iterations: int


def _pivot_col(T: np.ndarray, tol) -> Optional[int]:
    """First column with a negative reduced cost (Bland)."""
    for col, cost in enumerate(T[-1, :-1]):
        if cost < -tol:
            return col
    return None


def _pivot_row(T: np.ndarray, basis: List[int], col: int, tol) -> Optional[int]:
    """Minimum-ratio row; ties go to the smallest basic variable index (Bland)."""
    best_row, best_ratio = None, None
    for row in range(T.shape[0] - 1):
        entry = T[row, col]
        if entry <= tol:
            continue
        ratio = T[row, -1] / entry
        if (best_ratio is None or ratio < best_ratio
                or (ratio == best_ratio and basis[row] < basis[best_row])):
            best_row, best_ratio = row, ratio
    return best_row


def _apply_pivot(T: np.ndarray, basis: List[int], row: int, col: int):
    basis[row] = col
    T[row] = T[row] / T[row, col]
    for other in range(T.shape[0]):
        if other != row and T[other, col] != 0:
            T[other] = T[other] - T[other, col] * T[row]


def phase_one(A, b, exact: bool = False, tol: Optional[float] = None,
              max_iter: Optional[int] = None) -> FeasibilityResult:
    """
    Decide whether {x >= 0 : A x = b} is nonempty.

    Args:
        A: constraint matrix (rows x cols)
        b: right-hand side
        exact: pivot over Fractions; inputs must then be int/Fraction valued
        tol: pivoting and feasibility tolerance (0 in exact mode)

    Returns:
        FeasibilityResult with a feasible point when one exists
    """
    if exact:
        convert = np.vectorize(Fraction, otypes=[object])
        A = convert(np.asarray(A, dtype=object))
        b = convert(np.asarray(b, dtype=object))
        zero, tol = Fraction(0), Fraction(0)
    else:
        A = np.asarray(A, dtype=float)
        b = np.asarray(b, dtype=float)
        zero = 0.0
        tol = LP_FEASIBILITY_TOL if tol is None else tol

    rows, cols = A.shape
    if rows == 0:
        return FeasibilityResult(True, np.zeros(cols), 0.0, exact, 0)

    # Flip rows so that b >= 0, then add one artificial per row.
    flip = np.array([-1 if value < zero else 1 for value in b], dtype=object if exact else float)
    A = A * flip[:, np.newaxis]
    b = b * flip

    width = cols + rows + 1
    T = np.empty((rows + 1, width), dtype=object if exact else float)
    T[:rows, :cols] = A
    T[:rows, cols:cols + rows] = zero
    for r in range(rows):
        T[r, cols + r] = Fraction(1) if exact else 1.0
    T[:rows, -1] = b
    T[-1, :cols] = -A.sum(axis=0)
    T[-1, cols:cols + rows] = zero
    T[-1, -1] = -b.sum()
    basis = list(range(cols, cols + rows))

    limit = max_iter if max_iter is not None else 50 * width
    iterations = 0
    while iterations < limit:
        col = _pivot_col(T, tol)
        if col is None:
            break
        row = _pivot_row(T, basis, col, tol)
        if row is None:
            # The phase-one objective is bounded below by zero.
            logging.warning("phase-one simplex found an unbounded ray; stopping")
            break
        _apply_pivot(T, basis, row, col)
        iterations += 1
    else:
        logging.warning(f"phase-one simplex stopped after {limit} pivots")

    infeasibility = -T[-1, -1]
    feasible = infeasibility <= tol
    x = None
    if feasible:
        x = np.array([zero] * cols, dtype=object if exact else float)
        for r, var in enumerate(basis):
            if var < cols:
                x[var] = T[r, -1]
    logging.debug(f"phase-one simplex: {iterations} pivots, infeasibility {float(infeasibility):.3g}")
    return FeasibilityResult(bool(feasible), x, float(infeasibility), exact, iterations)
