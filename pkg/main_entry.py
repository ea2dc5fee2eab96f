import sys


def show_help():
    """Display help information about available modes."""
    print("""
Hypergraph Spectra - p-Laplacian eigenpairs and spectral bounds on oriented hypergraphs

Usage:
    python main_entry.py [mode] file [options]

Available Modes:
    spectra     Eigenvalues of the vertex or hyperedge p-Laplacian
    bounds      Cheeger, k-cut, coloring, family and hyperedge bound suites
    nodal       Nodal domains and Courant-type checks

Examples:
    # p = 2 spectrum of the vertex Laplacian
    python main_entry.py spectra triangle.json

    # Extremal eigenpairs at p = 3 on the hyperedge side, report to a file
    python main_entry.py spectra triangle.json --p 3 --side hyperedge --out report.json

    # Every bound suite
    python main_entry.py bounds triangle.json --suite all

    # Nodal domains of the p = 2 eigenfunctions
    python main_entry.py nodal triangle.json

For detailed options, use: python main_entry.py [mode] --help
    """)


def main() -> int:
    """Main entry point for the Hypergraph Spectra application."""
    if len(sys.argv) == 1 or sys.argv[1] in ['--help', '-h', 'help']:
        show_help()
        return 0

    mode = sys.argv[1]
    argv = sys.argv[2:]

    if mode == 'spectra':
        from hypergraph_spectra.cli import run_spectra
        return run_spectra(argv)

    elif mode == 'bounds':
        from hypergraph_spectra.cli import run_bounds
        return run_bounds(argv)

    elif mode == 'nodal':
        from hypergraph_spectra.cli import run_nodal
        return run_nodal(argv)

    else:
        print(f"Unknown mode: {mode}")
        print("Available modes: spectra, bounds, nodal")
        print("Use 'python main_entry.py --help' for more information")
        return 2


if __name__ == "__main__":
    sys.exit(main())
