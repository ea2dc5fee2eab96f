"""
Named oriented hypergraphs and a seeded random generator.

All fixtures use 0-based vertices. ``standard_corpus`` collects the named
instances together with random ones for property checks.
"""

from typing import Dict, List, Optional

import numpy as np

from .config import get_default_seed
from .core import OrientedHypergraph, build
from .errors import DomainError


def triangle() -> OrientedHypergraph:
    """Oriented 3-cycle: (1 -> 2), (2 -> 3), (3 -> 1)."""
    return build(3, [({0}, {1}), ({1}, {2}), ({2}, {0})])


def k2() -> OrientedHypergraph:
    """A single edge with one input and one output."""
    return build(2, [({0}, {1})])


def signless_k2() -> OrientedHypergraph:
    return build(2, [({0, 1}, set())])


def signless_triangle() -> OrientedHypergraph:
    """Triangle whose edges have both endpoints as inputs."""
    return build(3, [({0, 1}, set()), ({1, 2}, set()), ({0, 2}, set())])


def star(leaves: int = 3) -> OrientedHypergraph:
    return build(leaves + 1, [({0}, {i}) for i in range(1, leaves + 1)])


def path(n: int = 4) -> OrientedHypergraph:
    return build(n, [({i}, {i + 1}) for i in range(n - 1)])


def cycle(n: int = 4) -> OrientedHypergraph:
    return build(n, [({i}, {(i + 1) % n}) for i in range(n)])


def courant_gamma_k(n: int, k: int) -> OrientedHypergraph:
    """
    Inputs-only graph with edges {i, j} for i <= k < j (1-based), i.e. the
    complete bipartite graph between the first k vertices and the rest.
    """
    if not 1 <= k < n:
        raise DomainError(f"need 1 <= k < n, got n={n}, k={k}")
    return build(n, [({i, j}, set()) for i in range(k) for j in range(k, n)])


def mixed() -> OrientedHypergraph:
    """Four vertices, hyperedges of mixed orientation and cardinality."""
    return build(4, [({0, 1}, {2}), ({1}, {2, 3}), ({0, 3}, set())])


def fano_like() -> OrientedHypergraph:
    """Five vertices, three-element hyperedges with one output each."""
    return build(5, [({0, 1}, {2}), ({2, 3}, {4}), ({4, 0}, {1}), ({1, 3}, {0})])


def edge_plus_triangle() -> OrientedHypergraph:
    """Disconnected: an edge and an oriented triangle."""
    return build(5, [({0}, {1}), ({2}, {3}), ({3}, {4}), ({4}, {2})])


def two_disjoint_edges() -> OrientedHypergraph:
    return build(4, [({0}, {1}), ({2}, {3})])


def single_hyperedge() -> OrientedHypergraph:
    return build(3, [({0, 1}, {2})])


def random_hypergraph(n: int, m: int, seed: Optional[int] = None, max_cardinality: int = 3,
                      inputs_only: bool = False) -> OrientedHypergraph:
    """
    Random oriented hypergraph on n vertices with m hyperedges.

    Uncovered vertices are appended to random hyperedges as inputs, so the
    result has no isolated vertex; the same seed gives the same hypergraph.
    """
    rng = np.random.default_rng(get_default_seed() if seed is None else seed)
    edges = []
    for _ in range(m):
        size = int(rng.integers(1, min(max_cardinality, n) + 1))
        members = rng.choice(n, size=size, replace=False)
        if inputs_only:
            edges.append([set(int(v) for v in members), set()])
            continue
        roles = rng.random(size) < 0.5
        edges.append([set(int(v) for v, r in zip(members, roles) if r),
                      set(int(v) for v, r in zip(members, roles) if not r)])
    covered = set().union(*(a | b for a, b in edges)) if edges else set()
    for v in range(n):
        if v not in covered:
            edges[int(rng.integers(0, m))][0].add(v)
    return build(n, [(a, b) for a, b in edges])


def named_fixtures() -> Dict[str, OrientedHypergraph]:
    return {
        "triangle": triangle(),
        "k2": k2(),
        "signless_k2": signless_k2(),
        "signless_triangle": signless_triangle(),
        "star3": star(3),
        "path4": path(4),
        "cycle4": cycle(4),
        "cycle5": cycle(5),
        "gamma_5_2": courant_gamma_k(5, 2),
        "mixed": mixed(),
        "fano_like": fano_like(),
        "edge_plus_triangle": edge_plus_triangle(),
        "two_disjoint_edges": two_disjoint_edges(),
        "single_hyperedge": single_hyperedge(),
    }


def standard_corpus(random_count: int = 18, seed: int = 0, max_n: int = 6) -> Dict[str, OrientedHypergraph]:
    """Named fixtures followed by ``random_count`` random instances (every fourth inputs-only)."""
    corpus = named_fixtures()
    rng = np.random.default_rng(seed)
    for index in range(random_count):
        n = int(rng.integers(2, max_n + 1))
        m = int(rng.integers(max(1, n // 2), n + 3))
        corpus[f"random_{index}"] = random_hypergraph(
            n, m, seed=int(rng.integers(0, 2**31)), inputs_only=index % 4 == 3
        )
    return corpus


def inputs_only_instances(corpus: Dict[str, OrientedHypergraph]) -> List[str]:
    return [name for name, graph in corpus.items() if graph.is_inputs_only()]
