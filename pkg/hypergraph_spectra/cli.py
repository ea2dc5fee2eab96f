"""
Command Line Interface Module for hypergraph_spectra.

Three commands share one file format and one report format:

    spectra   eigenvalues and eigenpairs of the vertex or hyperedge p-Laplacian
    bounds    combinatorial quantities and the eigenvalue sandwiches they give
    nodal     nodal domains of eigenfunctions and the Courant-type checks

Hypergraph files are JSON documents with 1-based vertex indices:

    {"n": 3, "labels": ["a", "b", "c"],
     "hyperedges": [{"in": [1], "out": [2]}, {"in": [2], "out": [3]}, {"in": [3], "out": [1]}]}

Exit codes: 0 every check holds, 1 a check failed or an internal error,
2 invalid input, 3 an exhaustive search exceeded its size limit.
"""

import argparse
import hashlib
import json
import logging
import sys
import time
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .config import (
    BIPARTITE_LIMIT,
    CHEEGER_LIMIT,
    COLORING_LIMIT,
    DEFAULT_MAX_ITER,
    DEFAULT_MAX_WORKERS,
    DEFAULT_STARTS,
    DEFAULT_TOL_RESIDUAL,
    KCUT_LIMIT,
    KL_FAMILY_LIMIT,
    get_default_seed,
    set_default_seed,
    set_verbose,
)
from .core import OrientedHypergraph, build
from .eigen import (
    SolverConfig,
    certified_extremes,
    delta_bounds,
    lambda_min_bound_reports,
    lambda_min_smallest_nonzero,
    spectrum_p2,
    verify_1lap_eigenpair,
)
from .errors import HypergraphFileError, InputError, SizeLimitError
from .nodal import check_courant, check_courant_inputs_only, nodal_domains
from .operators import Side, check_p, rayleigh_quotient
from .partition import (
    Partition,
    bipartite_eta_bound,
    cheeger,
    e_p_full_bounds,
    enumerate_kl_families,
    hyperedge_k_cut_bounds,
    k_cut,
    k_cut_bounds,
    kl_family_bound,
    partition_corollary_bounds,
    sandwich_ep,
    signed_coloring_bound,
    signed_coloring_number,
    signed_hyperedge_coloring_bound,
    unsigned_coloring_number,
)
from .reporting import BoundReport, build_report, export_bounds_csv, serialize_report, write_report

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3
SUITES = ["cheeger", "kcut", "coloring", "klfamily", "hyperedge"]


# File format


def _location_error(message: str, location: str):
    raise HypergraphFileError(message, location)


def _index_list(value, n: int, location: str) -> List[int]:
    if not isinstance(value, list):
        _location_error("expected an array of vertex indices", location)
    indices = []
    for pos, item in enumerate(value):
        if isinstance(item, bool) or not isinstance(item, int):
            _location_error(f"vertex index must be an integer, got {item!r}", f"{location}[{pos}]")
        if not 1 <= item <= n:
            _location_error(f"vertex index {item} outside 1..{n}", f"{location}[{pos}]")
        indices.append(item - 1)
    return indices


def parse_hypergraph(text: str, source: str = "<input>") -> OrientedHypergraph:
    """Parse a hypergraph document; errors carry a line/column or field location."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise HypergraphFileError(e.msg, f"{source}:{e.lineno}:{e.colno}")
    if not isinstance(data, dict):
        _location_error("top level must be an object", source)

    n = data.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        _location_error(f"'n' must be a positive integer, got {n!r}", f"{source}:n")

    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            _location_error("'labels' must be an array of strings", f"{source}:labels")
        if len(labels) != n:
            _location_error(f"expected {n} labels, got {len(labels)}", f"{source}:labels")

    records = data.get("hyperedges")
    if not isinstance(records, list):
        _location_error("'hyperedges' must be an array", f"{source}:hyperedges")
    edges = []
    for pos, record in enumerate(records):
        where = f"{source}:hyperedges[{pos}]"
        if not isinstance(record, dict):
            _location_error("hyperedge must be an object with 'in' and 'out'", where)
        unknown = sorted(set(record) - {"in", "out"})
        if unknown:
            _location_error(f"unknown fields {unknown}", where)
        inputs = _index_list(record.get("in", []), n, f"{where}.in")
        outputs = _index_list(record.get("out", []), n, f"{where}.out")
        if set(inputs) & set(outputs):
            shared = sorted(v + 1 for v in set(inputs) & set(outputs))
            _location_error(f"vertices {shared} are both input and output", where)
        if not inputs and not outputs:
            _location_error("hyperedge has no vertices", where)
        edges.append((inputs, outputs))

    try:
        return build(n, edges, labels)
    except InputError as e:
        raise HypergraphFileError(str(e), f"{source}:hyperedges")


def serialize_hypergraph(graph: OrientedHypergraph) -> str:
    data: Dict[str, Any] = {"n": graph.n}
    if graph.labels is not None:
        data["labels"] = list(graph.labels)
    data["hyperedges"] = [
        {"in": sorted(i + 1 for i in h.inputs), "out": sorted(j + 1 for j in h.outputs)}
        for h in graph.hyperedges
    ]
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def load_hypergraph(path: str) -> Tuple[OrientedHypergraph, str]:
    """Read and parse a hypergraph file; returns the graph and the file's sha256."""
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as e:
        raise HypergraphFileError(f"cannot read file: {e.strerror}", path)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise HypergraphFileError("file is not valid UTF-8", path)
    return parse_hypergraph(text, path), hashlib.sha256(raw).hexdigest()


# Shared plumbing


def _base_parser(prog: str, description: str, epilog: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=prog,
        description=description,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=epilog,
    )
    parser.add_argument('file', help='Hypergraph JSON file (1-based vertex indices)')
    parser.add_argument('--p', type=float, default=2.0, help='Exponent p >= 1 (default: 2)')
    parser.add_argument('--seed', type=int, default=None,
                        help='Solver seed (default: HYPERSPEC_SEED or 0)')
    parser.add_argument('--starts', type=int, default=DEFAULT_STARTS,
                        help=f'Multi-start pool size (default: {DEFAULT_STARTS})')
    parser.add_argument('--tol', type=float, default=DEFAULT_TOL_RESIDUAL,
                        help=f'Convergence residual tolerance (default: {DEFAULT_TOL_RESIDUAL})')
    parser.add_argument('--max-iter', type=int, default=DEFAULT_MAX_ITER,
                        help=f'Iterations per start (default: {DEFAULT_MAX_ITER})')
    parser.add_argument('--max-workers', type=int, default=DEFAULT_MAX_WORKERS,
                        help=f'Worker threads for solver starts (default: {DEFAULT_MAX_WORKERS})')
    parser.add_argument('--heuristic', action='store_true',
                        help='Above the exhaustive size limits use local search, greedy or p-continuation')
    parser.add_argument('--out', help='Write the JSON report here (default: stdout)')
    parser.add_argument('--csv', help='Also write the bound checks as a CSV table')
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable verbose output')
    return parser


def _solver_config(args) -> SolverConfig:
    check_p(args.p)
    if args.seed is not None:
        set_default_seed(args.seed)
    return SolverConfig(
        starts=args.starts,
        max_iter=args.max_iter,
        tol_residual=args.tol,
        max_workers=args.max_workers,
        seed=get_default_seed(),
    )


def _banner(lines: Sequence[str]):
    print("=" * 60, file=sys.stderr)
    for line in lines:
        print(line, file=sys.stderr)
    print("=" * 60, file=sys.stderr)


def _finish(command: str, argv: Sequence[str], digest: str, config: Dict[str, Any],
            results: Dict[str, Any], bounds: List[BoundReport], converged: bool,
            started: float, args) -> int:
    failed = [b.name for b in bounds if not b.holds]
    status = "ok" if not failed else "bound_violated"
    if not converged:
        status = "not_converged" if not failed else "bound_violated,not_converged"
    results["bounds"] = bounds
    report = build_report(command, list(argv), digest, config, results, status,
                          time.perf_counter() - started)
    if args.out:
        write_report(report, args.out)
    else:
        sys.stdout.write(serialize_report(report))
    if args.csv:
        export_bounds_csv(bounds, args.csv)

    summary = [f"{command}: {len(bounds) - len(failed)}/{len(bounds)} checks hold, status {status}"]
    summary += [f"  failed: {name}" for name in failed]
    _banner(summary)
    return EXIT_OK if not failed else EXIT_FAILED


def _guarded(command: str, body, argv: Sequence[str]) -> int:
    """Run a command body and map exceptions to exit codes."""
    try:
        return body()
    except HypergraphFileError as e:
        logging.error(f"Invalid hypergraph file at {e.location}: {e}")
        return EXIT_INPUT
    except InputError as e:
        logging.error(f"Invalid input for {command}: {e}")
        return EXIT_INPUT
    except SizeLimitError as e:
        hint = "--heuristic, or raise the matching --*-limit" if command == "bounds" else "--heuristic"
        logging.error(f"{e} (rerun with {hint})")
        return EXIT_SIZE
    except Exception as e:
        logging.error(f"Unexpected error in {command}: {e}")
        return EXIT_FAILED


# spectra


def _load_candidates(path: str, dimension: int) -> List[Tuple[float, List[float]]]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise HypergraphFileError(f"cannot read candidates: {e.strerror}", path)
    except json.JSONDecodeError as e:
        raise HypergraphFileError(e.msg, f"{path}:{e.lineno}:{e.colno}")
    if not isinstance(data, list):
        raise HypergraphFileError("candidates must be an array", path)
    out = []
    for pos, item in enumerate(data):
        where = f"{path}[{pos}]"
        if not isinstance(item, dict) or "lambda" not in item or "function" not in item:
            raise HypergraphFileError("candidate needs 'lambda' and 'function'", where)
        value, function = item["lambda"], item["function"]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise HypergraphFileError(f"'lambda' must be a number, got {value!r}", where)
        if not isinstance(function, list) or len(function) != dimension:
            raise HypergraphFileError(f"'function' must have {dimension} entries", where)
        out.append((value, function))
    return out


def run_spectra(argv: Optional[Sequence[str]] = None) -> int:
    parser = _base_parser(
        "spectra",
        "Eigenvalues of the vertex and hyperedge p-Laplacians of an oriented hypergraph",
        """
Examples:
  # Full p = 2 spectrum of the vertex Laplacian
  python main_entry.py spectra triangle.json --p 2

  # Smallest and largest eigenpairs at p = 3 on the hyperedge side
  python main_entry.py spectra triangle.json --p 3 --side hyperedge --starts 32

  # p = 1 extremes plus certificates for candidate eigenpairs
  python main_entry.py spectra k2.json --p 1 --candidates candidates.json
        """,
    )
    parser.add_argument('--side', choices=['vertex', 'hyperedge'], default='vertex',
                        help='Operator side (default: vertex)')
    parser.add_argument('--candidates', help='JSON array of {"lambda", "function"} to certify at p = 1')
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    set_verbose(args.verbose)

    def body():
        started = time.perf_counter()
        graph, digest = load_hypergraph(args.file)
        cfg = _solver_config(args)
        side = Side(args.side)
        _banner([f"spectra: {args.file}", f"n={graph.n}, m={graph.m}, p={args.p}, side={side.value}"])

        results: Dict[str, Any] = {"n": graph.n, "m": graph.m, "p": args.p, "side": side.value}
        converged = True
        if args.p == 2:
            pairs = spectrum_p2(graph, side)
            results["eigenpairs"] = pairs
            extremes = (pairs[0], pairs[-1])
        else:
            extremes = certified_extremes(graph, args.p, side, cfg, args.heuristic)
            results["extremal_eigenpairs"] = list(extremes)
            converged = all(pair.converged for pair in extremes)
        bounds = delta_bounds(graph, args.p, side, extremes)

        if args.p > 1:
            smallest = lambda_min_smallest_nonzero(graph, args.p, side, cfg)
            results["smallest_nonzero"] = smallest
            converged = converged and (smallest.converged or args.p == 2)
            if side is Side.VERTEX:
                bounds += lambda_min_bound_reports(graph, args.p, cfg, smallest)
        else:
            top = extremes[1]
            attained = rayleigh_quotient(graph, 1.0, top.function, side)
            bounds.append(BoundReport("p1_maximum_formula", abs(attained - _p1_maximum(graph, side)), 0.0,
                                      witness="RQ_1 of the maximizing delta against the closed form",
                                      details={"value": top.value}))
            if args.candidates:
                dimension = graph.n if side is Side.VERTEX else graph.m
                results["certificates"] = [
                    verify_1lap_eigenpair(graph, value, function, side)
                    for value, function in _load_candidates(args.candidates, dimension)
                ]
        return _finish("spectra", argv, digest, {"solver": cfg, "side": side.value, "p": args.p,
                                                "heuristic": args.heuristic},
                       results, bounds, converged, started, args)

    return _guarded("spectra", body, argv)


def _p1_maximum(graph: OrientedHypergraph, side: Side) -> float:
    if side is Side.VERTEX:
        return 1.0
    degrees = graph.degrees
    return max(sum(1.0 / degrees[i] for i in h.members) for h in graph.hyperedges)


# bounds


def _bounds_suites(graph: OrientedHypergraph, args, cfg: SolverConfig,
                   results: Dict[str, Any]) -> List[BoundReport]:
    suites = SUITES if args.suite == "all" else [args.suite]
    p = args.p
    cache: Dict[str, Any] = {}

    def extremes(side: Side):
        if side.value not in cache:
            cache[side.value] = certified_extremes(graph, p, side, cfg, args.heuristic)
        return cache[side.value]

    def p2_extremes():
        if "p2" not in cache:
            spectrum = spectrum_p2(graph, Side.VERTEX)
            cache["p2"] = (spectrum[0], spectrum[-1])
        return cache["p2"]

    bounds: List[BoundReport] = []
    if "cheeger" in suites:
        result = cheeger(graph, args.cheeger_limit)
        results["cheeger"] = result
        if result.subset:
            low, high = p2_extremes()
            bounds.append(sandwich_ep(graph, result.subset, 2.0, low.value, high.value))

    if "kcut" in suites:
        vertex = extremes(Side.VERTEX)
        k = min(args.k, graph.n)
        if k >= 2:
            bounds += k_cut_bounds(graph, p, k, vertex, args.kcut_limit, args.heuristic)
            heaviest = k_cut(graph, k, p, "max", args.kcut_limit, args.heuristic)
            results["max_cut"] = heaviest
            bounds += partition_corollary_bounds(graph, p, heaviest.partition, vertex)
        else:
            bounds += partition_corollary_bounds(graph, p, Partition.of([range(graph.n)], graph.n), vertex)
        bounds += e_p_full_bounds(graph, p)

    if "coloring" in suites:
        chi, coloring = signed_coloring_number(graph, Side.VERTEX, args.coloring_limit, args.heuristic)
        chi_plain, plain = unsigned_coloring_number(graph, args.coloring_limit, args.heuristic)
        chi_h, coloring_h = signed_coloring_number(graph, Side.HYPEREDGE, args.coloring_limit, args.heuristic)
        results["coloring"] = {"signed": coloring, "unsigned": plain, "signed_hyperedge": coloring_h}
        bounds += signed_coloring_bound(graph, p, coloring, extremes(Side.VERTEX))
        bounds.append(signed_hyperedge_coloring_bound(graph, p, coloring_h, extremes(Side.HYPEREDGE)))
        if not (coloring.heuristic or plain.heuristic):
            bounds.append(BoundReport("signed_le_unsigned_coloring", chi, chi_plain,
                                      witness=f"chi_sgn={chi}, chi={chi_plain}"))

    if "klfamily" in suites:
        if graph.n > args.kl_limit:
            raise SizeLimitError("(k,l)-family enumeration", graph.n, args.kl_limit)
        reports = [kl_family_bound(graph, family, p2_extremes())
                   for family in enumerate_kl_families(graph.n, args.k, args.l)]
        results["kl_families"] = {"k": args.k, "l": args.l, "count": len(reports),
                                  "violations": sum(not r.holds for r in reports)}
        if reports:
            picked = [min(reports, key=lambda r: r.middle), max(reports, key=lambda r: r.middle)]
            picked += [r for r in reports if not r.holds]
            bounds += list({id(r): r for r in picked}.values())
        if p != 2:
            results["kl_families"]["note"] = "families are checked against the p = 2 spectrum"

    if "hyperedge" in suites:
        hyper = extremes(Side.HYPEREDGE)
        bounds += delta_bounds(graph, p, Side.HYPEREDGE, hyper)
        if graph.m >= 2:
            bounds += hyperedge_k_cut_bounds(graph, p, min(args.k, graph.m), hyper,
                                             args.kcut_limit, args.heuristic)
        bounds += bipartite_eta_bound(graph, p, hyper[1].value, args.bipartite_limit, args.heuristic)

    converged = all(pair.converged for key in ("vertex", "hyperedge") if key in cache for pair in cache[key])
    results["extremes"] = {key: list(value) for key, value in cache.items() if key != "p2"}
    results["_converged"] = converged
    return bounds


def run_bounds(argv: Optional[Sequence[str]] = None) -> int:
    parser = _base_parser(
        "bounds",
        "Combinatorial eigenvalue bounds (Cheeger, k-cuts, colorings, families, hyperedge cuts)",
        """
Examples:
  # Every suite at p = 2
  python main_entry.py bounds triangle.json --suite all

  # Vertex 3-cuts at p = 1.5, allowing local search on large instances
  python main_entry.py bounds big.json --suite kcut --k 3 --p 1.5 --heuristic

  # All (3,2)-families, with a CSV table of the checks
  python main_entry.py bounds mixed.json --suite klfamily --k 3 --l 2 --csv checks.csv
        """,
    )
    parser.add_argument('--suite', choices=SUITES + ['all'], default='all', help='Bound suite (default: all)')
    parser.add_argument('--k', type=int, default=2, help='Number of blocks or family size (default: 2)')
    parser.add_argument('--l', type=int, default=1, help='Family coverage multiplicity (default: 1)')
    parser.add_argument('--cheeger-limit', type=int, default=CHEEGER_LIMIT)
    parser.add_argument('--kcut-limit', type=int, default=KCUT_LIMIT)
    parser.add_argument('--coloring-limit', type=int, default=COLORING_LIMIT)
    parser.add_argument('--bipartite-limit', type=int, default=BIPARTITE_LIMIT)
    parser.add_argument('--kl-limit', type=int, default=KL_FAMILY_LIMIT)
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    set_verbose(args.verbose)

    def body():
        started = time.perf_counter()
        graph, digest = load_hypergraph(args.file)
        cfg = _solver_config(args)
        _banner([f"bounds: {args.file}", f"n={graph.n}, m={graph.m}, p={args.p}, suite={args.suite}"])
        results: Dict[str, Any] = {"n": graph.n, "m": graph.m, "p": args.p, "suite": args.suite}
        bounds = _bounds_suites(graph, args, cfg, results)
        converged = results.pop("_converged")
        config = {"solver": cfg, "p": args.p, "suite": args.suite, "k": args.k, "l": args.l,
                  "heuristic": args.heuristic}
        return _finish("bounds", argv, digest, config, results, bounds, converged, started, args)

    return _guarded("bounds", body, argv)


# nodal


def run_nodal(argv: Optional[Sequence[str]] = None) -> int:
    parser = _base_parser(
        "nodal",
        "Nodal domains of eigenfunctions and the Courant-type bounds",
        """
Examples:
  # Every p = 2 eigenfunction
  python main_entry.py nodal triangle.json

  # Extremal eigenfunctions at p = 3 with a coarser zero threshold
  python main_entry.py nodal signless.json --p 3 --threshold 1e-6
        """,
    )
    parser.add_argument('--threshold', type=float, default=None,
                        help='Entries with |f(i)| <= threshold count as zero (default: 1e-9 * max|f|)')
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    set_verbose(args.verbose)

    def body():
        started = time.perf_counter()
        graph, digest = load_hypergraph(args.file)
        cfg = _solver_config(args)
        _banner([f"nodal: {args.file}", f"n={graph.n}, m={graph.m}, p={args.p}"])
        if args.p == 2:
            pairs = spectrum_p2(graph, Side.VERTEX)
        else:
            pairs = list(certified_extremes(graph, args.p, Side.VERTEX, cfg, args.heuristic))
        converged = all(pair.converged for pair in pairs)

        results: Dict[str, Any] = {
            "n": graph.n, "m": graph.m, "p": args.p,
            "eigenpairs": pairs,
            "nodal": [nodal_domains(graph, pair.function, args.threshold) for pair in pairs],
        }
        bounds = check_courant(graph, args.p, pairs, args.threshold)
        if graph.is_inputs_only():
            bounds += check_courant_inputs_only(graph, args.p, pairs, args.threshold)
        config = {"solver": cfg, "p": args.p, "threshold": args.threshold, "heuristic": args.heuristic}
        return _finish("nodal", argv, digest, config, results, bounds, converged, started, args)

    return _guarded("nodal", body, argv)


if __name__ == "__main__":
    sys.exit(run_spectra())
