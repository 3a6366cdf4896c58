"""Exception hierarchy.

Everything raised on purpose derives from DksError so CLI code can map
failures to exit codes without enumerating causes.
"""


class DksError(Exception):
    """Base class for all deliberate failures."""


class FormatError(DksError):
    """Input file could not be parsed."""


class NotPlanar(DksError):
    """Graph admits no planar embedding."""


class NotOuterplanar(DksError):
    """Graph is not outerplanar (solver requires it)."""


class EmbeddingInconsistent(DksError):
    """A supplied rotation system / outer face failed validation."""


class TriangulationIncomplete(DksError):
    """Internal: augmentation left a face untriangulated where the
    decomposition needs a triangulation edge."""


class NoDividingPoint(DksError):
    """Internal: no admissible boundary split point exists; indicates a
    broken triangulation invariant."""


class BoundaryMismatch(DksError):
    """Internal: two slice tables were merged along unequal boundaries."""


class KTooLarge(DksError):
    """Requested k exceeds the number of vertices."""


class CapExceeded(DksError):
    """An exponential-time oracle was asked to exceed its size cap."""


class InfeasibleSpec(DksError):
    """Generator parameters admit no instance (e.g. n too small for the
    requested number of layers)."""
