"""
Hypergraph Spectra - p-Laplacians on oriented hypergraphs.

This package provides tools for:
- Building oriented hypergraphs (hyperedges with input and output vertices)
- Applying the vertex and hyperedge p-Laplacians and their Rayleigh quotients
- Computing eigenpairs: full spectra at p = 2, certified extremes for p > 1,
  exact extremes and certificates at p = 1, and the smallest nonzero eigenvalue
- Counting nodal domains and checking the Courant-type bounds
- Checking Cheeger, k-cut, coloring, family and partition bounds against
  exhaustive combinatorial oracles
- Writing self-contained JSON reports and CSV tables of every check
"""

__version__ = "1.0.0"
__author__ = "Hypergraph Spectra Team"

from .config import DEFAULT_SEED, get_default_seed, set_default_seed
from .core import Hyperedge, OrientedHypergraph, build, connected_components
from .eigen import (
    EigenPair,
    LambdaMinResult,
    OneLapCertificate,
    SolverConfig,
    certified_extremes,
    extremal_eigenpair,
    extremal_rq1,
    lambda_min_smallest_nonzero,
    round_to_one_laplacian,
    spectrum_p2,
    verify_1lap_eigenpair,
)
from .errors import InputError, SizeLimitError
from .nodal import NodalReport, check_courant, check_courant_inputs_only, nodal_domains
from .operators import Side, apply_p_laplacian, rayleigh_quotient
from .partition import Partition, cheeger, k_cut
from .reporting import BoundReport
from .cli import run_bounds, run_nodal, run_spectra

__all__ = [
    'Hyperedge',
    'OrientedHypergraph',
    'build',
    'connected_components',
    'Side',
    'apply_p_laplacian',
    'rayleigh_quotient',
    'EigenPair',
    'LambdaMinResult',
    'OneLapCertificate',
    'SolverConfig',
    'certified_extremes',
    'extremal_eigenpair',
    'extremal_rq1',
    'lambda_min_smallest_nonzero',
    'round_to_one_laplacian',
    'spectrum_p2',
    'verify_1lap_eigenpair',
    'NodalReport',
    'check_courant',
    'check_courant_inputs_only',
    'nodal_domains',
    'Partition',
    'cheeger',
    'k_cut',
    'BoundReport',
    'InputError',
    'SizeLimitError',
    'run_spectra',
    'run_bounds',
    'run_nodal',
    'DEFAULT_SEED',
    'get_default_seed',
    'set_default_seed',
]
