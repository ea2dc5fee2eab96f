"""
Conflict graphs and colorings of vertices and hyperedges.

Exact colorings use backtracking over a fixed largest-degree-first order,
trying k = 1, 2, ... colors; a new color is opened only after every used
color has been tried. Above the size limit a greedy coloring is available on request
and is flagged as heuristic.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .config import COLORING_LIMIT
from .core import OrientedHypergraph
from .errors import DomainError, InvalidColoringError, SizeLimitError


@dataclass(frozen=True)
class Coloring:
    """Color (0-based) of each vertex or hyperedge."""

    assignment: Tuple[int, ...]
    heuristic: bool = False

    @classmethod
    def of(cls, colors, heuristic: bool = False) -> "Coloring":
        assignment = tuple(int(c) for c in colors)
        if any(c < 0 for c in assignment):
            raise InvalidColoringError(f"colors must be non-negative, got {list(assignment)}")
        return cls(assignment, heuristic)

    @property
    def num_colors(self) -> int:
        return len(set(self.assignment))

    def classes(self) -> List[frozenset]:
        """Nonempty color classes, ordered by color."""
        groups = {}
        for item, color in enumerate(self.assignment):
            groups.setdefault(color, set()).add(item)
        return [frozenset(groups[c]) for c in sorted(groups)]

    def to_dict(self):
        return {
            "colors": [c + 1 for c in self.assignment],
            "num_colors": self.num_colors,
            "heuristic": self.heuristic,
        }


def signed_vertex_conflicts(graph: OrientedHypergraph) -> np.ndarray:
    """i ~ j iff i and j are anti-oriented in some hyperedge."""
    adjacency = np.zeros((graph.n, graph.n), dtype=bool)
    for h in graph.hyperedges:
        for i in h.inputs:
            for j in h.outputs:
                adjacency[i, j] = adjacency[j, i] = True
    return adjacency


def unsigned_vertex_conflicts(graph: OrientedHypergraph) -> np.ndarray:
    """i ~ j iff i != j share a hyperedge."""
    adjacency = np.zeros((graph.n, graph.n), dtype=bool)
    for h in graph.hyperedges:
        members = sorted(h.members)
        for i in members:
            for j in members:
                if i != j:
                    adjacency[i, j] = True
    return adjacency


def signed_hyperedge_conflicts(graph: OrientedHypergraph) -> np.ndarray:
    """h ~ h' iff some vertex is an input of one and an output of the other."""
    incidence = graph.incidence_matrix
    adjacency = np.zeros((graph.m, graph.m), dtype=bool)
    for row in incidence:
        inputs = np.flatnonzero(row > 0)
        outputs = np.flatnonzero(row < 0)
        for a in inputs:
            for b in outputs:
                adjacency[a, b] = adjacency[b, a] = True
    return adjacency


def _order(adjacency: np.ndarray) -> List[int]:
    degrees = adjacency.sum(axis=1)
    return sorted(range(len(adjacency)), key=lambda v: (-int(degrees[v]), v))


def find_k_coloring(adjacency: np.ndarray, k: int) -> Optional[List[int]]:
    """A proper coloring with at most k colors, or None."""
    if k <= 0:
        raise DomainError(f"k should be greater than 0, got {k}")
    size = len(adjacency)
    ordering = _order(adjacency)
    neighbors = [np.flatnonzero(adjacency[v]) for v in range(size)]
    coloring = np.full(size, -1)

    def extend(position, used):
        if position == size:
            return True
        vertex = ordering[position]
        forbidden = set(coloring[neighbors[vertex]].tolist()) - {-1}
        for color in range(used):
            if color in forbidden:
                continue
            coloring[vertex] = color
            if extend(position + 1, used):
                return True
        if used < k:
            coloring[vertex] = used
            if extend(position + 1, used + 1):
                return True
        coloring[vertex] = -1
        return False

    if extend(0, 0):
        return coloring.tolist()
    return None


def greedy_coloring(adjacency: np.ndarray) -> List[int]:
    """Smallest available color, vertices in largest-degree-first order."""
    colors = np.full(len(adjacency), -1)
    for vertex in _order(adjacency):
        taken = set(colors[adjacency[vertex]].tolist())
        color = 0
        while color in taken:
            color += 1
        colors[vertex] = color
    return colors.tolist()


def chromatic_number(adjacency: np.ndarray, limit: int = COLORING_LIMIT,
                     heuristic: bool = False) -> Tuple[int, Coloring]:
    """Minimal number of colors of a conflict graph, with a witness coloring."""
    size = len(adjacency)
    if size > limit:
        if not heuristic:
            raise SizeLimitError("exact coloring", size, limit)
        colors = greedy_coloring(adjacency)
        coloring = Coloring.of(colors, heuristic=True)
        logging.warning(f"Greedy coloring used for {size} items: {coloring.num_colors} colors (upper bound)")
        return coloring.num_colors, coloring

    for k in range(1, size + 1):
        colors = find_k_coloring(adjacency, k)
        if colors is not None:
            coloring = Coloring.of(colors)
            return coloring.num_colors, coloring
    raise RuntimeError("backtracking failed to color a finite graph")


def validate_coloring(adjacency: np.ndarray, coloring: Coloring):
    if len(coloring.assignment) != len(adjacency):
        raise InvalidColoringError(
            f"coloring has {len(coloring.assignment)} entries, expected {len(adjacency)}"
        )
    colors = np.asarray(coloring.assignment)
    clashes = np.argwhere(adjacency & (colors[:, np.newaxis] == colors[np.newaxis, :]))
    if len(clashes):
        a, b = clashes[0]
        raise InvalidColoringError(f"items {a + 1} and {b + 1} conflict but share color {colors[a] + 1}")
