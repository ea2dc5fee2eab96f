"""Exception hierarchy for hypergraph_spectra.

Every rejected input derives from :class:`InputError` so callers (and the CLI)
can treat them uniformly. Refused exhaustive work raises :class:`SizeLimitError`.
Non-convergence is reported on results, never raised.
"""


class InputError(ValueError):
    """Base class for invalid input to any operation."""


class OverlapError(InputError):
    """A hyperedge has a vertex that is both input and output."""


class IsolatedVertexError(InputError):
    """A vertex belongs to no hyperedge."""


class EmptyHyperedgeError(InputError):
    """A hyperedge has neither inputs nor outputs."""


class VertexIndexError(InputError, IndexError):
    """A vertex or hyperedge index lies outside its range."""


class DimensionError(InputError):
    """A function vector has the wrong length."""


class DomainError(InputError):
    """A scalar parameter lies outside the operation's domain."""


class ZeroFunctionError(InputError):
    """The function is identically zero (below threshold)."""


class InvalidColoringError(InputError):
    """An assignment violates the signed-coloring constraints."""


class InvalidFamilyError(InputError):
    """A set family does not cover its union exactly l times."""


class DegenerateError(InputError):
    """The requested quantity is undefined for this input (k == l, a single vertex)."""


class EmptySubsetError(InputError):
    """An empty hyperedge subset where a nonempty one is required."""


class NotInputsOnlyError(InputError):
    """An operation restricted to inputs-only hypergraphs got outputs."""


class InvalidPartitionError(InputError):
    """Blocks are not disjoint, nonempty and covering."""


class HypergraphFileError(InputError):
    """A hypergraph file could not be parsed; ``location`` names where."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class SizeLimitError(RuntimeError):
    """Exhaustive computation refused because the instance is too large."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds exhaustive limit {limit}")
