"""
Combinatorial quantities on vertex and hyperedge sets, and the eigenvalue
bounds they give.

Vertex side:
    e_p(S) = sum over h of |#(S & h_in) - #(S & h_out)|^p
    Cheeger constant, k-cuts, signed colorings, (k,l)-families and the
    t/c-parameterized partition bounds.

Hyperedge side:
    e_p(Hs) = sum over i of |#(Hs & i_in) - #(Hs & i_out)|^p / deg(i)
    eta_p(Hs) = e_p(Hs) / #Hs
    hyperedge k-cuts, signed hyperedge colorings, bipartite sub-hypergraphs.

Exhaustive searches refuse instances above their size limits with a
SizeLimitError unless heuristic mode is requested; heuristic results carry
``exact=False`` and log a warning.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .coloring import (
    Coloring,
    chromatic_number,
    signed_hyperedge_conflicts,
    signed_vertex_conflicts,
    unsigned_vertex_conflicts,
    validate_coloring,
)
from .config import BIPARTITE_LIMIT, CHEEGER_LIMIT, COLORING_LIMIT, KCUT_LIMIT
from .core import OrientedHypergraph
from .eigen import EigenPair, spectrum_p2
from .errors import (
    DegenerateError,
    DomainError,
    EmptySubsetError,
    InvalidFamilyError,
    InvalidPartitionError,
    SizeLimitError,
    VertexIndexError,
)
from .operators import Side, SideLike, as_side, check_p
from .reporting import BoundReport, describe_sets, one_based

CUT_MODES = ("balanced_min", "balanced_max", "max")
_CHUNK = 1 << 14
_TIE = 1e-12

Extremes = Tuple[Union[EigenPair, float], Union[EigenPair, float]]


def _extreme_values(extremes: Extremes) -> Tuple[float, float]:
    low, high = extremes
    low = low.value if isinstance(low, EigenPair) else float(low)
    high = high.value if isinstance(high, EigenPair) else float(high)
    return low, high


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering range(size), sorted by smallest element."""

    blocks: Tuple[frozenset, ...]
    size: int

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]], size: int) -> "Partition":
        sets = [frozenset(int(v) for v in block) for block in blocks]
        if not sets:
            raise InvalidPartitionError("a partition needs at least one block")
        if any(not block for block in sets):
            raise InvalidPartitionError("partition blocks must be nonempty")
        seen = set()
        for block in sets:
            shared = seen & block
            if shared:
                raise InvalidPartitionError(f"elements {one_based(shared)} appear in two blocks")
            seen |= block
        if seen != set(range(size)):
            missing = sorted(set(range(size)) - seen)
            extra = sorted(seen - set(range(size)))
            raise InvalidPartitionError(
                f"blocks must cover 1..{size} exactly (missing {one_based(missing)}, "
                f"out of range {one_based(extra)})"
            )
        return cls(tuple(sorted(sets, key=min)), size)

    @classmethod
    def from_masks(cls, masks: Sequence[int], size: int) -> "Partition":
        return cls.of([[i for i in range(size) if mask >> i & 1] for mask in masks], size)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def to_dict(self):
        return {"blocks": [one_based(block) for block in self.blocks]}


@dataclass(frozen=True)
class KLFamily:
    """k vertex sets covering their union exactly l times."""

    sets: Tuple[frozenset, ...]
    l: int

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]], l: int, n: Optional[int] = None) -> "KLFamily":
        family = tuple(frozenset(int(v) for v in s) for s in sets)
        if any(not s for s in family):
            raise InvalidFamilyError("family sets must be nonempty")
        if n is not None:
            for s in family:
                outside = [v for v in s if not 0 <= v < n]
                if outside:
                    raise VertexIndexError(f"vertices {outside} outside [0, {n})")
        if int(l) < 1:
            raise InvalidFamilyError(f"l must be >= 1, got {l}")
        coverage = {}
        for s in family:
            for v in s:
                coverage[v] = coverage.get(v, 0) + 1
        wrong = sorted(v for v, count in coverage.items() if count != l)
        if wrong:
            raise InvalidFamilyError(f"vertices {one_based(wrong)} are not covered exactly {l} times")
        if len(family) == l:
            raise DegenerateError("k = l makes the (k,l)-family ratio undefined")
        return cls(family, int(l))

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def union(self) -> frozenset:
        return frozenset().union(*self.sets)

    def to_dict(self):
        return {"k": self.k, "l": self.l, "sets": [one_based(s) for s in self.sets]}


# Vertex-side quantities


def _vertex_subset(graph: OrientedHypergraph, subset: Iterable[int]) -> List[int]:
    members = sorted({int(v) for v in subset})
    for v in members:
        if not 0 <= v < graph.n:
            raise VertexIndexError(f"vertex {v} outside [0, {graph.n})")
    return members


def e_p(graph: OrientedHypergraph, subset: Iterable[int], p: float) -> float:
    """sum over h of |#(S & h_in) - #(S & h_out)|^p; 0 for the empty set."""
    p = check_p(p)
    members = _vertex_subset(graph, subset)
    if not members:
        return 0.0
    imbalance = graph.incidence_matrix[members].sum(axis=0)
    return float(np.sum(np.abs(imbalance).astype(float) ** p))


def _mask_bits(size: int, start: int, stop: int) -> np.ndarray:
    masks = np.arange(start, stop, dtype=np.int64)
    return ((masks[:, np.newaxis] >> np.arange(size)) & 1).astype(np.int64)


def _vertex_tables(graph: OrientedHypergraph, p: float, start: int = 0,
                   stop: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """e_p and vol for every vertex bit mask in [start, stop)."""
    stop = 1 << graph.n if stop is None else stop
    bits = _mask_bits(graph.n, start, stop)
    imbalance = bits @ graph.incidence_matrix
    return (np.abs(imbalance).astype(float) ** p).sum(axis=1), bits @ graph.degrees


def _members(mask: int, size: int) -> Tuple[int, ...]:
    return tuple(i for i in range(size) if mask >> i & 1)


@dataclass
class CheegerResult:
    value: float
    subset: frozenset
    widened: bool

    def to_dict(self):
        return {"value": self.value, "subset": one_based(self.subset), "widened": self.widened}


def cheeger(graph: OrientedHypergraph, limit: int = CHEEGER_LIMIT) -> CheegerResult:
    """
    h = min e_2(S)/vol(S) over nonempty S with vol(S) <= vol(complement)/2.

    When no S meets that constraint the search widens to
    vol(S) <= vol(complement) and the result is flagged. Ties go to the
    lexicographically smallest sorted S.
    """
    n = graph.n
    if n > limit:
        raise SizeLimitError("Cheeger enumeration", n, limit)
    total = graph.total_volume
    full = (1 << n) - 1

    for widened in (False, True):
        best_value, best_members = None, None
        for start in range(1, full, _CHUNK):
            stop = min(start + _CHUNK, full)
            energies, volumes = _vertex_tables(graph, 2.0, start, stop)
            rest = total - volumes
            feasible = volumes <= rest if widened else 2 * volumes <= rest
            if not feasible.any():
                continue
            ratios = np.where(feasible, energies / np.maximum(volumes, 1), np.inf)
            low = float(ratios.min())
            if best_value is not None and low > best_value + _TIE:
                continue
            for offset in np.flatnonzero(ratios <= low + _TIE):
                members = _members(start + int(offset), n)
                value = float(ratios[offset])
                if (best_value is None or value < best_value - _TIE
                        or (abs(value - best_value) <= _TIE and members < best_members)):
                    best_value, best_members = value, members
        if best_value is not None:
            if widened:
                logging.warning("No set meets vol(S) <= vol(complement)/2; Cheeger search widened")
            return CheegerResult(best_value, frozenset(best_members), widened)
    raise DegenerateError("a single vertex admits no Cheeger set")


def set_partitions(size: int, k: int) -> Iterator[List[int]]:
    """
    Every partition of range(size) into exactly k nonempty blocks, as block bit masks.

    Partitions come in restricted-growth-string order: element i joins an
    existing block before it opens a new one.
    """
    if not 1 <= k <= size:
        return
    masks: List[int] = []

    def place(item):
        if item == size:
            yield list(masks)
            return
        remaining = size - item - 1
        if remaining >= k - len(masks):
            for j in range(len(masks)):
                masks[j] |= 1 << item
                yield from place(item + 1)
                masks[j] &= ~(1 << item)
        if len(masks) < k:
            masks.append(1 << item)
            yield from place(item + 1)
            masks.pop()

    yield from place(0)


@dataclass
class CutResult:
    value: float
    partition: Partition
    mode: str
    k: int
    p: float
    side: Side
    exact: bool

    def to_dict(self):
        return {
            "value": self.value,
            "partition": self.partition.to_dict(),
            "mode": self.mode,
            "k": self.k,
            "p": self.p,
            "side": self.side.value,
            "exact": self.exact,
        }


def _exhaustive_cut(size: int, k: int, scores: np.ndarray, maximize: bool) -> Tuple[float, List[int]]:
    best_value, best_masks = None, None
    for masks in set_partitions(size, k):
        value = float(sum(scores[mask] for mask in masks))
        if (best_value is None
                or (value > best_value + _TIE if maximize else value < best_value - _TIE)):
            best_value, best_masks = value, masks
    return best_value, best_masks


def _local_search_cut(size: int, k: int, score: Callable[[int], float],
                      maximize: bool) -> Tuple[float, List[int]]:
    """Single-element moves from a round-robin start until no move improves."""
    labels = [i % k for i in range(size)]
    masks = [0] * k
    for item, label in enumerate(labels):
        masks[label] |= 1 << item
    improved = True
    while improved:
        improved = False
        for item in range(size):
            src = labels[item]
            if masks[src] == 1 << item:
                continue
            for dst in range(k):
                if dst == src:
                    continue
                new_src, new_dst = masks[src] & ~(1 << item), masks[dst] | 1 << item
                change = score(new_src) + score(new_dst) - score(masks[src]) - score(masks[dst])
                if (change if maximize else -change) > _TIE:
                    masks[src], masks[dst] = new_src, new_dst
                    labels[item] = dst
                    improved = True
                    break
    return float(sum(score(mask) for mask in masks)), masks


def _check_cut_args(size: int, k: int, mode: str, what: str):
    if mode not in CUT_MODES:
        raise DomainError(f"mode must be one of {CUT_MODES}, got {mode!r}")
    if not 2 <= k <= size:
        raise DomainError(f"k must lie in [2, {size}] for a {what} k-cut, got {k}")


def _cut(size: int, k: int, p: float, mode: str, side: Side, limit: int, heuristic: bool,
         tables: Callable[[], Tuple[np.ndarray, np.ndarray]],
         block: Callable[[int], Tuple[float, float]]) -> CutResult:
    maximize = mode != "balanced_min"
    balanced = mode != "max"
    if size <= limit:
        energies, weights = tables()
        scores = energies / np.maximum(weights, 1) if balanced else energies
        value, masks = _exhaustive_cut(size, k, scores, maximize)
        exact = True
    else:
        if not heuristic:
            raise SizeLimitError(f"{side.value} k-cut enumeration", size, limit)

        def score(mask):
            energy, weight = block(mask)
            return energy / weight if balanced else energy

        value, masks = _local_search_cut(size, k, score, maximize)
        exact = False
        logging.warning(f"{side.value} {mode} {k}-cut found by local search (not exhaustive)")
    return CutResult(value, Partition.from_masks(masks, size), mode, k, p, side, exact)


def k_cut(graph: OrientedHypergraph, k: int, p: float, mode: str = "balanced_min",
          limit: int = KCUT_LIMIT, heuristic: bool = False) -> CutResult:
    """
    Vertex k-cut over partitions (V_1..V_k).

    balanced_min: min sum e_p(V_i)/vol(V_i); balanced_max: the same maximized;
    max: max sum e_p(V_i). Ties keep the first partition in restricted-growth order.
    """
    p = check_p(p)
    _check_cut_args(graph.n, k, mode, "vertex")

    def block(mask):
        members = _members(mask, graph.n)
        return e_p(graph, members, p), graph.volume(members)

    return _cut(graph.n, k, p, mode, Side.VERTEX, limit, heuristic,
                lambda: _vertex_tables(graph, p), block)


def k_cut_bounds(graph: OrientedHypergraph, p: float, k: int, extremes: Extremes,
                 limit: int = KCUT_LIMIT, heuristic: bool = False) -> List[BoundReport]:
    """
    lambda_1 <= (1/k) min sum e_p(V_i)/vol(V_i), and
    1/(k vol V) max sum e_p(V_i) <= (1/k) max sum e_p(V_i)/vol(V_i) <= lambda_n.
    """
    lam1, lamn = _extreme_values(extremes)
    low = k_cut(graph, k, p, "balanced_min", limit, heuristic)
    high = k_cut(graph, k, p, "balanced_max", limit, heuristic)
    heavy = k_cut(graph, k, p, "max", limit, heuristic)
    balanced_of_heavy = sum(e_p(graph, b, p) / graph.volume(b) for b in heavy.partition.blocks)
    middle = max(high.value, balanced_of_heavy)
    notes = [] if low.exact and high.exact and heavy.exact else ["heuristic cut"]
    return [
        BoundReport("kcut_lambda_1_upper", lam1, low.value / k,
                    witness=describe_sets(low.partition.blocks), notes=list(notes),
                    details={"p": p, "k": k, "cut": low.to_dict()}),
        BoundReport("kcut_lambda_n_lower", heavy.value / (k * graph.total_volume), lamn,
                    middle=middle / k, witness=describe_sets(high.partition.blocks),
                    notes=list(notes),
                    details={"p": p, "k": k, "max_cut": heavy.to_dict(), "balanced_max_cut": high.to_dict()}),
    ]


def sandwich_ep(graph: OrientedHypergraph, subset: Iterable[int], p: float,
                lambda_1: float, lambda_n: float) -> BoundReport:
    """lambda_1 <= e_p(S)/vol(S) <= lambda_n."""
    members = _vertex_subset(graph, subset)
    if not members:
        raise EmptySubsetError("e_p(S)/vol(S) needs a nonempty S")
    ratio = e_p(graph, members, p) / graph.volume(members)
    return BoundReport("ep_sandwich", lambda_1, lambda_n, middle=ratio,
                       witness=describe_sets([members]), details={"p": p})


def signed_coloring_number(graph: OrientedHypergraph, side: SideLike = Side.VERTEX,
                           limit: int = COLORING_LIMIT, heuristic: bool = False) -> Tuple[int, Coloring]:
    """Signed coloring number of vertices (or hyperedges) with a witness coloring."""
    side = as_side(side)
    conflicts = signed_vertex_conflicts(graph) if side is Side.VERTEX else signed_hyperedge_conflicts(graph)
    return chromatic_number(conflicts, limit, heuristic)


def unsigned_coloring_number(graph: OrientedHypergraph, limit: int = COLORING_LIMIT,
                             heuristic: bool = False) -> Tuple[int, Coloring]:
    """Coloring number where any two vertices sharing a hyperedge differ."""
    return chromatic_number(unsigned_vertex_conflicts(graph), limit, heuristic)


def signed_coloring_bound(graph: OrientedHypergraph, p: float, coloring: Coloring,
                          extremes: Extremes) -> List[BoundReport]:
    """
    lambda_1 <= (1/chi) sum_i sum_h #(V_i & h)^p / vol(V_i) <= lambda_n over the
    color classes V_i; at p = 1 the middle term and lambda_n both equal 1.
    """
    p = check_p(p)
    validate_coloring(signed_vertex_conflicts(graph), coloring)
    lam1, lamn = _extreme_values(extremes)
    reach = np.abs(graph.incidence_matrix)
    classes = coloring.classes()
    total = 0.0
    for members in classes:
        counts = reach[sorted(members)].sum(axis=0)
        total += float(np.sum(counts.astype(float) ** p)) / graph.volume(members)
    middle = total / len(classes)

    reports = [BoundReport("signed_coloring", lam1, lamn, middle=middle,
                           witness=f"{len(classes)} color classes: {describe_sets(classes)}",
                           notes=["heuristic coloring"] if coloring.heuristic else [],
                           details={"p": p, "coloring": coloring.to_dict()})]
    if p == 1:
        reports.append(BoundReport("signed_coloring_p1_equality", max(abs(middle - 1), abs(lamn - 1)), 0.0,
                                   witness="middle term and lambda_n at p = 1", details={"middle": middle}))
    return reports


def enumerate_kl_families(n: int, k: int, l: int) -> Iterator[KLFamily]:
    """
    Every (k,l)-family of nonempty subsets of range(n), each family once.

    Each vertex is either left out or placed in exactly l of the k sets.
    Families are deduplicated up to the order of their sets.
    """
    if not 1 <= l < k:
        raise DomainError(f"need 1 <= l < k, got k={k}, l={l}")
    choices = [()] + list(itertools.combinations(range(k), l))
    seen = set()
    for assignment in itertools.product(choices, repeat=n):
        sets = [set() for _ in range(k)]
        for vertex, slots in enumerate(assignment):
            for slot in slots:
                sets[slot].add(vertex)
        if any(not s for s in sets):
            continue
        key = tuple(sorted(tuple(sorted(s)) for s in sets))
        if key in seen:
            continue
        seen.add(key)
        yield KLFamily(tuple(frozenset(s) for s in key), l)


def kl_family_bound(graph: OrientedHypergraph, family: KLFamily,
                    extremes: Optional[Extremes] = None) -> BoundReport:
    """
    (k sum e(S_r) - l^2 e(U)) / ((k - l) l vol(U)) between the extreme
    eigenvalues of the p = 2 operator, U the union and e = e_2.
    """
    k, l = family.k, family.l
    if k == l:
        raise DegenerateError("k = l makes the (k,l)-family ratio undefined")
    union = _vertex_subset(graph, family.union)
    if extremes is None:
        spectrum = spectrum_p2(graph, Side.VERTEX)
        extremes = (spectrum[0], spectrum[-1])
    lam1, lamn = _extreme_values(extremes)
    numerator = k * sum(e_p(graph, s, 2.0) for s in family.sets) - l ** 2 * e_p(graph, union, 2.0)
    ratio = numerator / ((k - l) * l * graph.volume(union))
    return BoundReport("kl_family", lam1, lamn, middle=ratio,
                       witness=f"({k},{l})-family {describe_sets(family.sets)}",
                       details={"family": family.to_dict()})


def _check_vertex_partition(graph: OrientedHypergraph, partition: Partition):
    if partition.size != graph.n:
        raise InvalidPartitionError(f"partition covers {partition.size} items, graph has {graph.n} vertices")


def general_partition_bounds(graph: OrientedHypergraph, p: float, partition: Partition, t: float,
                             c: float, extremes: Extremes) -> Tuple[BoundReport, BoundReport]:
    """
    Lower bound on lambda_n and upper bound on lambda_1 from the test functions
    equal to t on one block and -1 elsewhere.

        lambda_n >= (c^(p-1) |t+1|^p sum e_p(V_r) - (c/(1-c))^(p-1) k e_p(V)) / (vol(V) (|t|^p + k - 1))
        lambda_1 <= 2^(p-1) (|t+1|^p sum e_p(V_r) + k e_p(V)) / (vol(V) (|t|^p + k - 1))

    The 2^(p-1) factor comes from |x - y|^p <= 2^(p-1) (|x|^p + |y|^p); it is 1 at p = 1.
    """
    p = check_p(p)
    _check_vertex_partition(graph, partition)
    if not 0 < c < 1:
        raise DomainError(f"c must lie in (0, 1), got {c}")
    if not np.isfinite(t):
        raise DomainError(f"t must be finite, got {t}")
    lam1, lamn = _extreme_values(extremes)
    k = partition.k
    blocks = sum(e_p(graph, block, p) for block in partition.blocks)
    whole = e_p(graph, range(graph.n), p)
    scale = graph.total_volume * (abs(t) ** p + k - 1)
    if scale == 0:
        raise DegenerateError("t = 0 with a single block gives the zero test function")
    lower = (c ** (p - 1) * abs(t + 1) ** p * blocks - (c / (1 - c)) ** (p - 1) * k * whole) / scale
    upper = 2 ** (p - 1) * (abs(t + 1) ** p * blocks + k * whole) / scale
    witness = describe_sets(partition.blocks)
    details = {"p": p, "t": t, "c": c, "k": k, "sum_e_p_blocks": blocks, "e_p_whole": whole}
    return (BoundReport("partition_lambda_n_lower", lower, lamn, witness=witness, details=dict(details)),
            BoundReport("partition_lambda_1_upper", lam1, upper, witness=witness, details=dict(details)))


def partition_corollary_bounds(graph: OrientedHypergraph, p: float, partition: Partition,
                               extremes: Extremes) -> List[BoundReport]:
    """
    Named specializations of the partition bounds: (t, c) = (k-1, 1/2),
    (k-1, 1/k) and (1, 1/2) for lambda_n; t = -1 and t -> infinity for
    lambda_1; and, at p = 1, sum e_1(V_r)/vol(V) on both sides.
    """
    p = check_p(p)
    _check_vertex_partition(graph, partition)
    lam1, lamn = _extreme_values(extremes)
    k = partition.k
    witness = describe_sets(partition.blocks)
    reports = []
    if k >= 2:
        for label, t, c in (("t=k-1,c=1/2", k - 1, 0.5), ("t=k-1,c=1/k", k - 1, 1.0 / k),
                            ("t=1,c=1/2", 1, 0.5)):
            lower, _ = general_partition_bounds(graph, p, partition, t, c, extremes)
            lower.name = f"partition_lambda_n_lower[{label}]"
            reports.append(lower)

    vol = graph.total_volume
    blocks = sum(e_p(graph, block, p) for block in partition.blocks)
    whole = e_p(graph, range(graph.n), p)
    reports.append(BoundReport("partition_lambda_1_upper[t=-1]", lam1, whole / vol,
                               witness="e_p(V)/vol(V)", details={"p": p}))
    reports.append(BoundReport("partition_lambda_1_upper[t=inf]", lam1, blocks / vol,
                               witness=witness, details={"p": p}))
    if p == 1:
        reports.append(BoundReport("partition_p1_lambda_n_lower", blocks / vol, lamn,
                                   witness=witness, details={"p": p}))
    return reports


def e_p_full_bounds(graph: OrientedHypergraph, p: float) -> List[BoundReport]:
    """0 <= e_p(V) <= sum_h (#h)^p and 0 <= e_p(H) <= sum_i deg(i)^(p-1)."""
    p = check_p(p)
    vertex_side = e_p(graph, range(graph.n), p)
    hyperedge_side = e_p_hyperedges(graph, range(graph.m), p)
    balanced_edges = all(len(h.inputs) == len(h.outputs) for h in graph.hyperedges)
    incidence = graph.incidence_matrix
    balanced_vertices = bool(np.all(incidence.sum(axis=1) == 0))
    return [
        BoundReport("e_p_whole_vertex_set", 0.0,
                    float(np.sum(graph.cardinalities.astype(float) ** p)), middle=vertex_side,
                    details={"p": p, "zero_iff_balanced": balanced_edges}),
        BoundReport("e_p_whole_hyperedge_set", 0.0,
                    float(np.sum(graph.degrees.astype(float) ** (p - 1))), middle=hyperedge_side,
                    details={"p": p, "zero_iff_balanced": balanced_vertices}),
    ]


# Hyperedge-side quantities


def _hyperedge_subset(graph: OrientedHypergraph, subset: Iterable[int]) -> List[int]:
    members = sorted({int(h) for h in subset})
    for h in members:
        if not 0 <= h < graph.m:
            raise VertexIndexError(f"hyperedge {h} outside [0, {graph.m})")
    return members


def e_p_hyperedges(graph: OrientedHypergraph, subset: Iterable[int], p: float) -> float:
    """sum over vertices of |#(Hs & i_in) - #(Hs & i_out)|^p / deg(i); 0 for the empty set."""
    p = check_p(p)
    members = _hyperedge_subset(graph, subset)
    if not members:
        return 0.0
    imbalance = graph.incidence_matrix[:, members].sum(axis=1)
    return float(np.sum(np.abs(imbalance).astype(float) ** p / graph.degrees))


def eta_p(graph: OrientedHypergraph, subset: Iterable[int], p: float) -> float:
    members = _hyperedge_subset(graph, subset)
    if not members:
        raise EmptySubsetError("eta_p needs a nonempty set of hyperedges")
    return e_p_hyperedges(graph, members, p) / len(members)


def _hyperedge_tables(graph: OrientedHypergraph, p: float) -> Tuple[np.ndarray, np.ndarray]:
    """e_p and cardinality for every hyperedge bit mask."""
    bits = _mask_bits(graph.m, 0, 1 << graph.m)
    imbalance = bits @ graph.incidence_matrix.T
    energies = (np.abs(imbalance).astype(float) ** p / graph.degrees).sum(axis=1)
    return energies, bits.sum(axis=1)


def hyperedge_k_cut(graph: OrientedHypergraph, k: int, p: float, mode: str = "balanced_min",
                    limit: int = KCUT_LIMIT, heuristic: bool = False) -> CutResult:
    """
    Hyperedge k-cut over partitions (H_1..H_k).

    balanced_min: min sum eta_p(H_i); balanced_max: max sum eta_p(H_i);
    max: max sum e_p(H_i).
    """
    p = check_p(p)
    _check_cut_args(graph.m, k, mode, "hyperedge")

    def block(mask):
        members = _members(mask, graph.m)
        return e_p_hyperedges(graph, members, p), len(members)

    return _cut(graph.m, k, p, mode, Side.HYPEREDGE, limit, heuristic,
                lambda: _hyperedge_tables(graph, p), block)


def hyperedge_cut_bounds(graph: OrientedHypergraph, p: float, partition: Partition,
                         extremes: Extremes, cuts: Optional[Sequence[CutResult]] = None) -> List[BoundReport]:
    """
    mu_1 <= eta_p(H_i) <= mu_m for every block; with k-cut results also
    mu_1 <= (1/k) min sum eta_p and 1/(k #H) max sum e_p <= (1/k) max sum eta_p <= mu_m.
    """
    p = check_p(p)
    if partition.size != graph.m:
        raise InvalidPartitionError(f"partition covers {partition.size} items, graph has {graph.m} hyperedges")
    mu1, mum = _extreme_values(extremes)
    reports = [
        BoundReport("hyperedge_block_eta", mu1, mum, middle=eta_p(graph, block, p),
                    witness=f"hyperedges {one_based(block)}", details={"p": p})
        for block in partition.blocks
    ]
    if cuts:
        by_mode: Dict[str, CutResult] = {cut.mode: cut for cut in cuts}
        if "balanced_min" in by_mode:
            low = by_mode["balanced_min"]
            reports.append(BoundReport("hyperedge_kcut_mu_1_upper", mu1, low.value / low.k,
                                       witness=describe_sets(low.partition.blocks),
                                       details={"p": p, "cut": low.to_dict()}))
        if "balanced_max" in by_mode and "max" in by_mode:
            high, heavy = by_mode["balanced_max"], by_mode["max"]
            k = high.k
            eta_of_heavy = sum(eta_p(graph, b, p) for b in heavy.partition.blocks)
            reports.append(BoundReport("hyperedge_kcut_mu_m_lower", heavy.value / (k * graph.m), mum,
                                       middle=max(high.value, eta_of_heavy) / k,
                                       witness=describe_sets(high.partition.blocks),
                                       details={"p": p, "max_cut": heavy.to_dict(),
                                                "balanced_max_cut": high.to_dict()}))
    return reports


def hyperedge_k_cut_bounds(graph: OrientedHypergraph, p: float, k: int, extremes: Extremes,
                           limit: int = KCUT_LIMIT, heuristic: bool = False) -> List[BoundReport]:
    cuts = [hyperedge_k_cut(graph, k, p, mode, limit, heuristic) for mode in CUT_MODES]
    return hyperedge_cut_bounds(graph, p, cuts[0].partition, extremes, cuts)


def signed_hyperedge_coloring_bound(graph: OrientedHypergraph, p: float, coloring: Coloring,
                                    extremes: Extremes) -> BoundReport:
    """mu_1 <= (1/chi) sum_j (1/#H_j) sum_i #(H_j & i)^p / deg(i) <= mu_m over color classes H_j."""
    p = check_p(p)
    validate_coloring(signed_hyperedge_conflicts(graph), coloring)
    mu1, mum = _extreme_values(extremes)
    reach = np.abs(graph.incidence_matrix)
    classes = coloring.classes()
    total = 0.0
    for members in classes:
        counts = reach[:, sorted(members)].sum(axis=1)
        total += float(np.sum(counts.astype(float) ** p / graph.degrees)) / len(members)
    return BoundReport("signed_hyperedge_coloring", mu1, mum, middle=total / len(classes),
                       witness=f"{len(classes)} hyperedge color classes: {describe_sets(classes)}",
                       notes=["heuristic coloring"] if coloring.heuristic else [],
                       details={"p": p, "coloring": coloring.to_dict()})


def bipartite_orientation(graph: OrientedHypergraph, subset: Iterable[int]) -> Optional[Dict[int, int]]:
    """
    Signs s_h (+1 keep, -1 reverse) making every vertex always an input or always
    an output within ``subset``, or None when no such choice exists.
    """
    members = _hyperedge_subset(graph, subset)
    incidence = graph.incidence_matrix
    links = {h: [] for h in members}
    for row in incidence[:, members]:
        touching = [(members[j], int(row[j])) for j in np.flatnonzero(row)]
        for (a, sa), (b, sb) in zip(touching, touching[1:]):
            links[a].append((b, sa * sb))
            links[b].append((a, sa * sb))

    signs: Dict[int, int] = {}
    for root in members:
        if root in signs:
            continue
        signs[root] = 1
        stack = [root]
        while stack:
            h = stack.pop()
            for other, relation in links[h]:
                wanted = signs[h] * relation
                if other not in signs:
                    signs[other] = wanted
                    stack.append(other)
                elif signs[other] != wanted:
                    return None
    return signs


@dataclass
class BipartiteResult:
    value: float
    hyperedges: frozenset
    exact: bool

    def to_dict(self):
        return {"value": self.value, "hyperedges": one_based(self.hyperedges), "exact": self.exact}


def _bipartite_eta(graph: OrientedHypergraph, members: Sequence[int], p: float) -> float:
    counts = np.abs(graph.incidence_matrix[:, list(members)]).sum(axis=1)
    return float(np.sum(counts.astype(float) ** p / graph.degrees)) / len(members)


def bipartite_eta_max(graph: OrientedHypergraph, p: float, limit: int = BIPARTITE_LIMIT,
                      heuristic: bool = False) -> BipartiteResult:
    """
    max eta_p over bipartite sub-hypergraphs, where eta_p of a bipartite set is
    sum_i deg_sub(i)^p / deg(i) / #set. Ties keep the smallest sorted set.
    """
    p = check_p(p)
    m = graph.m
    if m > limit:
        if not heuristic:
            raise SizeLimitError("bipartite sub-hypergraph enumeration", m, limit)
        return _greedy_bipartite(graph, p)

    best_value, best_members = None, None
    for mask in range(1, 1 << m):
        members = _members(mask, m)
        if bipartite_orientation(graph, members) is None:
            continue
        value = _bipartite_eta(graph, members, p)
        if (best_value is None or value > best_value + _TIE
                or (abs(value - best_value) <= _TIE and members < best_members)):
            best_value, best_members = value, members
    return BipartiteResult(best_value, frozenset(best_members), True)


def _greedy_bipartite(graph: OrientedHypergraph, p: float) -> BipartiteResult:
    singles = [_bipartite_eta(graph, [h], p) for h in range(graph.m)]
    chosen = [int(np.argmax(singles))]
    value = singles[chosen[0]]
    while True:
        best = None
        for h in range(graph.m):
            if h in chosen:
                continue
            trial = sorted(chosen + [h])
            if bipartite_orientation(graph, trial) is None:
                continue
            trial_value = _bipartite_eta(graph, trial, p)
            if trial_value > value + _TIE and (best is None or trial_value > best[0] + _TIE):
                best = (trial_value, trial)
        if best is None:
            break
        value, chosen = best
    logging.warning(f"bipartite sub-hypergraph found greedily for m={graph.m} (lower bound on the maximum)")
    return BipartiteResult(value, frozenset(chosen), False)


def bipartite_eta_bound(graph: OrientedHypergraph, p: float, mu_m: float,
                        limit: int = BIPARTITE_LIMIT, heuristic: bool = False) -> List[BoundReport]:
    """max over bipartite sub-hypergraphs of eta_p <= mu_m, with equality at p = 1."""
    result = bipartite_eta_max(graph, p, limit, heuristic)
    reports = [BoundReport("bipartite_eta_max", result.value, mu_m,
                           witness=f"hyperedges {one_based(result.hyperedges)}",
                           notes=[] if result.exact else ["greedy search"],
                           details={"p": p, "result": result.to_dict()})]
    if p == 1 and result.exact:
        reports.append(BoundReport("bipartite_eta_p1_equality", abs(result.value - mu_m), 0.0,
                                   witness="max eta_1 equals mu_m", details={"p": p}))
    return reports
