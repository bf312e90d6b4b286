"""Exception taxonomy shared by all fumcolor modules."""


class FumError(Exception):
    """Base class for every error raised by this package."""


class GraphInputError(FumError):
    """A graph could not be built from the given rotation data."""


class SelfLoop(GraphInputError):
    """A vertex lists itself as a neighbor."""


class DuplicateNeighbor(GraphInputError):
    """A neighbor appears more than once in a single rotation."""


class AsymmetricRotation(GraphInputError):
    """u lists v as a neighbor but v does not list u."""


class IndexOutOfRange(GraphInputError):
    """A vertex reference falls outside [0, n)."""


class NonPlanarEmbedding(GraphInputError):
    """The rotation system has positive genus (fails Euler's formula)."""


class NotACycleBoundary(FumError):
    """Operation requires the outer boundary to be a simple cycle."""


class NotASeparator(FumError):
    """The given vertices do not disconnect the graph."""


class PartialColoring(FumError):
    """A coloring is missing a vertex it must cover."""


class PrecoloringMismatch(FumError):
    """A coloring disagrees with the precolored path it must extend."""


class InvalidPrecoloredPath(FumError):
    """A precolored path violates its own invariants on the given graph."""


class HypothesisViolated(FumError):
    """The high-degree vertices do not induce a star forest."""


class InternalCaseExhaustion(FumError):
    """No dispatch case applies.

    This state is impossible when the entry hypothesis holds; reaching it
    means either a violated precondition slipped through or a bug. The
    offending problem is dumped to disk for triage.
    """


class ChildContractFailure(FumError):
    """A recursive call returned a coloring that fails its own contract."""


class BadHeader(FumError):
    """A planar_code stream does not start with the expected header."""


class TruncatedGraph(FumError):
    """A planar_code stream ended in the middle of a graph record."""


class UnrepresentableInFormat(FumError):
    """The requested output format cannot carry part of the payload."""


class FormatError(FumError):
    """A text or JSON graph document is malformed."""
