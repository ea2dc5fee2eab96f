"""
Nodal domains of vertex functions and the two Courant-type checks.

A nodal domain is a connected component of the hypergraph restricted to the
support of f; positive and negative domains use supp+ and supp- instead.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import MULTIPLICITY_GAP, ZERO_THRESHOLD_FACTOR
from .core import OrientedHypergraph, connected_components
from .eigen import EigenPair, kernel_dimension
from .errors import DomainError, InputError, NotInputsOnlyError, ZeroFunctionError
from .operators import Side, as_function, phi
from .reporting import BoundReport, describe_sets, one_based


@dataclass
class NodalReport:
    threshold: float
    support: frozenset
    domains: List[frozenset]
    positive_domains: List[frozenset]
    negative_domains: List[frozenset]

    @property
    def count(self) -> int:
        return len(self.domains)

    @property
    def signed_count(self) -> int:
        """Positive plus negative nodal domains."""
        return len(self.positive_domains) + len(self.negative_domains)

    def to_dict(self):
        return {
            "threshold": self.threshold,
            "support": one_based(self.support),
            "domains": [one_based(d) for d in self.domains],
            "positive_domains": [one_based(d) for d in self.positive_domains],
            "negative_domains": [one_based(d) for d in self.negative_domains],
            "count": self.count,
            "signed_count": self.signed_count,
        }


def nodal_domains(graph: OrientedHypergraph, f, threshold: Optional[float] = None) -> NodalReport:
    """
    Nodal domains of a vertex function.

    Entries with |f(i)| <= threshold count as zero; the default threshold is
    ZERO_THRESHOLD_FACTOR * max|f|.
    """
    values = as_function(graph, f, Side.VERTEX)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    if threshold is None:
        threshold = ZERO_THRESHOLD_FACTOR * scale
    if threshold < 0:
        raise DomainError(f"threshold must be non-negative, got {threshold}")

    positive = frozenset(int(i) for i in np.flatnonzero(values > threshold))
    negative = frozenset(int(i) for i in np.flatnonzero(values < -threshold))
    support = positive | negative
    if not support:
        raise ZeroFunctionError(f"every entry of f is within {threshold:g} of zero")

    def components(subset):
        return connected_components(graph.restrict(subset))

    report = NodalReport(
        threshold=float(threshold),
        support=support,
        domains=components(support),
        positive_domains=components(positive) if positive else [],
        negative_domains=components(negative) if negative else [],
    )
    logging.debug(f"nodal domains {describe_sets(report.domains)}")
    return report


def _courant_indices(graph: OrientedHypergraph, pair: EigenPair) -> Tuple[int, int, bool]:
    """(first index of the eigenvalue's cluster, multiplicity, multiplicity is only a lower bound)."""
    if pair.p == 2 and pair.cluster_start is not None and pair.multiplicity is not None:
        return pair.cluster_start, pair.multiplicity, False
    if pair.index is None:
        raise InputError("eigenpair carries no spectral index")
    if abs(pair.value) <= MULTIPLICITY_GAP:
        return 1, max(kernel_dimension(graph, Side.VERTEX), 1), False
    return pair.index, 1, True


def _check_vertex_pair(pair: EigenPair):
    if pair.side is not Side.VERTEX:
        raise InputError("nodal domains are defined for vertex eigenfunctions only")


def check_courant(graph: OrientedHypergraph, p: float, eigenpairs: Sequence[EigenPair],
                  threshold: Optional[float] = None) -> List[BoundReport]:
    """#nodal domains <= k + r - 1 for each eigenpair, k the first index of its eigenvalue."""
    reports = []
    for pair in eigenpairs:
        _check_vertex_pair(pair)
        k, r, lower_bound = _courant_indices(graph, pair)
        nodal = nodal_domains(graph, pair.function, threshold)
        notes = ["lower-bound multiplicity"] if lower_bound else []
        if p != 2:
            notes.append("multiplicity counted as eigenspace dimension")
        reports.append(BoundReport(
            "courant",
            lhs=nodal.count,
            rhs=k + r - 1,
            witness=f"eigenpair {pair.index} (lambda={pair.value:.12g})",
            notes=notes,
            details={"p": p, "k": k, "r": r, "domains": nodal.count,
                     "multiplicity_lower_bound": lower_bound, "nodal": nodal.to_dict()},
        ))
    logging.info(f"Courant check: {sum(r.holds for r in reports)}/{len(reports)} eigenpairs hold")
    return reports


def check_courant_inputs_only(graph: OrientedHypergraph, p: float, eigenpairs: Sequence[EigenPair],
                              threshold: Optional[float] = None) -> List[BoundReport]:
    """
    For hypergraphs with only inputs: #positive + #negative domains <= n - k + r.

    Here k is the last index of the eigenvalue's cluster, so the bound equals
    n - (first index) + 1.
    """
    if not graph.is_inputs_only():
        raise NotInputsOnlyError("the reverse Courant bound needs a hypergraph with only inputs")
    reports = []
    for pair in eigenpairs:
        _check_vertex_pair(pair)
        first, r, lower_bound = _courant_indices(graph, pair)
        k = first + r - 1
        nodal = nodal_domains(graph, pair.function, threshold)
        reports.append(BoundReport(
            "courant_inputs_only",
            lhs=nodal.signed_count,
            rhs=graph.n - k + r,
            witness=f"eigenpair {pair.index} (lambda={pair.value:.12g})",
            notes=["lower-bound multiplicity"] if lower_bound else [],
            details={"p": p, "k": k, "r": r, "signed_domains": nodal.signed_count,
                     "multiplicity_lower_bound": lower_bound, "nodal": nodal.to_dict()},
        ))
    return reports


def convexity_lemma_check(p: float, t: float, s: float, A: float, B: float,
                          slack: float = 1e-12) -> bool:
    """|tA + sB|^p >= (|t|^p A + |s|^p B) |A+B|^(p-2) (A+B) whenever A*B <= 0."""
    if A * B > 0:
        raise DomainError(f"need A*B <= 0, got A={A}, B={B}")
    if p < 1:
        raise DomainError(f"exponent p must be >= 1, got {p}")
    lhs = abs(t * A + s * B) ** p
    total = A + B
    # phi(0) = 0 stands in for |A+B|^(p-2)(A+B) at A+B = 0.
    rhs = (abs(t) ** p * A + abs(s) ** p * B) * float(phi(total, p))
    return bool(lhs >= rhs - slack * max(1.0, abs(lhs), abs(rhs)))
