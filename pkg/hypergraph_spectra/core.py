"""
Oriented hypergraph data model.

This module contains the immutable OrientedHypergraph class together with the
incidence structure, degrees, volumes, restriction to vertex subsets and the
connectivity helper used for nodal domains.

Vertices are 0-based internally; files use 1-based indices (see cli).
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _csgraph_components

from .errors import (
    EmptyHyperedgeError,
    InputError,
    IsolatedVertexError,
    OverlapError,
    VertexIndexError,
)


@dataclass(frozen=True)
class Hyperedge:
    """A pair of vertex sets (inputs, outputs)."""

    inputs: frozenset = field(default_factory=frozenset)
    outputs: frozenset = field(default_factory=frozenset)

    @property
    def members(self) -> frozenset:
        return self.inputs | self.outputs

    @property
    def cardinality(self) -> int:
        return len(self.inputs) + len(self.outputs)

    def is_empty(self) -> bool:
        return not self.inputs and not self.outputs

    def reversed(self) -> "Hyperedge":
        return Hyperedge(self.outputs, self.inputs)

    def restricted(self, subset: frozenset) -> "Hyperedge":
        return Hyperedge(self.inputs & subset, self.outputs & subset)

    def sign(self, i: int) -> int:
        """Incidence sign of vertex i: +1 input, -1 output, 0 otherwise."""
        if i in self.inputs:
            return 1
        if i in self.outputs:
            return -1
        return 0


HyperedgeLike = Union[Hyperedge, Tuple[Iterable[int], Iterable[int]]]


def _as_hyperedge(item: HyperedgeLike, position: int, n: int) -> Hyperedge:
    if isinstance(item, Hyperedge):
        inputs, outputs = item.inputs, item.outputs
    else:
        try:
            raw_in, raw_out = item
        except (TypeError, ValueError):
            raise InputError(f"hyperedge {position} must be an (inputs, outputs) pair")
        inputs, outputs = frozenset(raw_in), frozenset(raw_out)

    for v in inputs | outputs:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise VertexIndexError(f"hyperedge {position}: vertex {v!r} is not an integer index")
        if not 0 <= v < n:
            raise VertexIndexError(f"hyperedge {position}: vertex {v} outside [0, {n})")
    overlap = inputs & outputs
    if overlap:
        raise OverlapError(
            f"hyperedge {position}: vertices {sorted(overlap)} are both input and output"
        )
    if not inputs and not outputs:
        raise EmptyHyperedgeError(f"hyperedge {position} has no vertices")
    return Hyperedge(frozenset(int(v) for v in inputs), frozenset(int(v) for v in outputs))


@dataclass(frozen=True)
class OrientedHypergraph:
    """
    Immutable oriented hypergraph on vertices 0..n-1.

    Hyperedges form an ordered tuple; duplicates are allowed. Use :func:`build`
    (or :meth:`OrientedHypergraph.build`) to construct a validated instance.
    """

    n: int
    hyperedges: Tuple[Hyperedge, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InputError(f"vertex count must be a positive integer, got {self.n!r}")
        if self.labels is not None and len(self.labels) != self.n:
            raise InputError(f"expected {self.n} labels, got {len(self.labels)}")
        checked = tuple(_as_hyperedge(h, pos, self.n) for pos, h in enumerate(self.hyperedges))
        object.__setattr__(self, "hyperedges", checked)

        covered = set()
        for h in checked:
            covered |= h.members
        isolated = sorted(set(range(self.n)) - covered)
        if isolated:
            raise IsolatedVertexError(f"vertices of degree zero: {isolated}")

    @classmethod
    def build(cls, n: int, hyperedges: Iterable[HyperedgeLike],
              labels: Optional[Sequence[str]] = None) -> "OrientedHypergraph":
        return cls(n, tuple(hyperedges), tuple(labels) if labels is not None else None)

    # Sizes

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    def _check_vertex(self, i: int):
        if not 0 <= i < self.n:
            raise VertexIndexError(f"vertex {i} outside [0, {self.n})")

    def _check_hyperedge(self, h: int):
        if not 0 <= h < self.m:
            raise VertexIndexError(f"hyperedge {h} outside [0, {self.m})")

    def vertex_label(self, i: int) -> str:
        self._check_vertex(i)
        return self.labels[i] if self.labels is not None else str(i + 1)

    # Incidence structure

    @cached_property
    def incidence_matrix(self) -> np.ndarray:
        """n x m matrix with +1 for inputs, -1 for outputs, 0 elsewhere (read-only)."""
        matrix = np.zeros((self.n, self.m), dtype=np.int64)
        for col, h in enumerate(self.hyperedges):
            for i in h.inputs:
                matrix[i, col] = 1
            for j in h.outputs:
                matrix[j, col] = -1
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.count_nonzero(self.incidence_matrix, axis=1).astype(np.int64)
        deg.setflags(write=False)
        return deg

    @cached_property
    def cardinalities(self) -> np.ndarray:
        card = np.count_nonzero(self.incidence_matrix, axis=0).astype(np.int64)
        card.setflags(write=False)
        return card

    def degree(self, i: int) -> int:
        """Number of hyperedges containing vertex i."""
        self._check_vertex(i)
        return int(self.degrees[i])

    def cardinality(self, h: int) -> int:
        """Number of vertices of hyperedge h (inputs plus outputs)."""
        self._check_hyperedge(h)
        return int(self.cardinalities[h])

    def volume(self, subset: Iterable[int]) -> int:
        """Sum of degrees over a vertex subset; 0 for the empty set."""
        total = 0
        for i in set(subset):
            self._check_vertex(i)
            total += int(self.degrees[i])
        return total

    @property
    def total_volume(self) -> int:
        return int(self.degrees.sum())

    def is_inputs_only(self) -> bool:
        return all(not h.outputs for h in self.hyperedges)

    def is_graph(self) -> bool:
        return all(len(h.inputs) == 1 and len(h.outputs) == 1 for h in self.hyperedges)

    # Restriction and transforms

    def restrict(self, subset: Iterable[int]) -> List[Hyperedge]:
        """Hyperedges intersected with ``subset``, empty ones dropped, order kept."""
        keep = frozenset(subset)
        for i in keep:
            self._check_vertex(i)
        restricted = (h.restricted(keep) for h in self.hyperedges)
        return [h for h in restricted if not h.is_empty()]

    def reversed(self, which: Optional[Iterable[int]] = None) -> "OrientedHypergraph":
        """Swap inputs and outputs of the selected hyperedges (all by default)."""
        selected = set(range(self.m)) if which is None else set(which)
        for h in selected:
            self._check_hyperedge(h)
        edges = tuple(h.reversed() if pos in selected else h
                      for pos, h in enumerate(self.hyperedges))
        return OrientedHypergraph(self.n, edges, self.labels)

    def relabeled(self, permutation: Sequence[int]) -> "OrientedHypergraph":
        """Rename vertex i to permutation[i]."""
        perm = [int(v) for v in permutation]
        if sorted(perm) != list(range(self.n)):
            raise InputError(f"not a permutation of 0..{self.n - 1}: {perm}")
        edges = tuple(
            Hyperedge(frozenset(perm[i] for i in h.inputs), frozenset(perm[j] for j in h.outputs))
            for h in self.hyperedges
        )
        labels = None
        if self.labels is not None:
            moved = [""] * self.n
            for old, new in enumerate(perm):
                moved[new] = self.labels[old]
            labels = tuple(moved)
        return OrientedHypergraph(self.n, edges, labels)

    def duplicated(self, which: Optional[Iterable[int]] = None) -> "OrientedHypergraph":
        """Append a copy of the selected hyperedges (all by default)."""
        selected = range(self.m) if which is None else sorted(set(which))
        extra = []
        for h in selected:
            self._check_hyperedge(h)
            extra.append(self.hyperedges[h])
        return OrientedHypergraph(self.n, self.hyperedges + tuple(extra), self.labels)


def build(n: int, hyperedges: Iterable[HyperedgeLike],
          labels: Optional[Sequence[str]] = None) -> OrientedHypergraph:
    """Validate and build an oriented hypergraph."""
    graph = OrientedHypergraph.build(n, hyperedges, labels)
    logging.debug(f"Built hypergraph with n={graph.n}, m={graph.m}")
    return graph


def connected_components(hyperedges: Iterable[Hyperedge]) -> List[frozenset]:
    """
    Connected components of the vertices covered by a hyperedge collection.

    Two vertices are connected iff a chain of hyperedges links them.
    Components are returned sorted by their smallest vertex.
    """
    edges = [h for h in hyperedges if not h.is_empty()]
    if not edges:
        return []
    covered = sorted(set().union(*(h.members for h in edges)))
    position = {v: k for k, v in enumerate(covered)}

    rows, cols = [], []
    for h in edges:
        members = sorted(h.members)
        anchor = position[members[0]]
        for v in members:
            rows.append(anchor)
            cols.append(position[v])
    size = len(covered)
    adjacency = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
    _, labels = _csgraph_components(adjacency, directed=False)

    groups = {}
    for v, label in zip(covered, labels):
        groups.setdefault(int(label), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)
