"""
Configuration module for hypergraph_spectra.

Contains global settings, solver constants, size limits and configuration utilities.
"""

import os
import logging

# Configure logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')

# Global rng seed (can be set via CLI or environment variable)
DEFAULT_SEED = int(os.getenv("HYPERSPEC_SEED", "0"))

def set_default_seed(seed: int):
    """Set the global solver seed."""
    global DEFAULT_SEED
    DEFAULT_SEED = int(seed)

def get_default_seed() -> int:
    """Get the current global solver seed."""
    return DEFAULT_SEED

def set_verbose(verbose: bool):
    """Switch the root logger between INFO and DEBUG."""
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.INFO)

# Solver constants
DEFAULT_STARTS = 16
DEFAULT_MAX_ITER = 5000
DEFAULT_TOL_RESIDUAL = 1e-8
DEFAULT_MAX_WORKERS = 2
ARMIJO_C = 1e-4
ARMIJO_SHRINK = 0.5
MIN_STEP = 1e-16
SUBGRADIENT_MAX_ITER = 300  # p = 1 outer iterations; each step solves an LP
CONTINUATION_STAGES = (1.5, 1.2, 1.05)  # warm-start path for p below the first stage
P1_ROUNDING_TOL = 1e-6  # relative; entries below it round to zero before a p = 1 certificate
P1_SNAP_DENOMINATOR = 1000  # p = 1 values within P1_ROUNDING_TOL of such a fraction are snapped
P1_HEURISTIC_P = 1.01  # p of the continuation solve behind the p = 1 minimum above the enumeration limit

# Linear algebra thresholds
RANK_THRESHOLD = 1e-10  # relative to the largest singular value
LP_FEASIBILITY_TOL = 1e-9
MAX_EXACT_DENOMINATOR = 10**6

# Reporting
BOUND_TOLERANCE = 1e-8
MULTIPLICITY_GAP = 1e-7
ZERO_THRESHOLD_FACTOR = 1e-9

# Exhaustive enumeration limits
CHEEGER_LIMIT = 20
KCUT_LIMIT = 12
COLORING_LIMIT = 20
BIPARTITE_LIMIT = 15
P1_ENUMERATION_LIMIT = 12
KL_FAMILY_LIMIT = 8  # vertices for (k,l)-family enumeration
