"""Exception hierarchy for the library."""


class AeroImagingError(Exception):
    """Base class for all library errors."""


class DimensionError(AeroImagingError, ValueError):
    """Raised when point or matrix dimensions do not match."""


class DomainError(AeroImagingError, ValueError):
    """Raised when an argument lies outside the mathematical domain of an operation."""


class SingularPointError(AeroImagingError, ValueError):
    """Raised when a Green's function is evaluated at (or next to) its singularity."""


class GeometryError(AeroImagingError, ValueError):
    """Raised for invalid microphone/focus geometry (overlap, duplicates, empty sets)."""


class HermitianError(AeroImagingError, ValueError):
    """Raised when a matrix that must be Hermitian (or PSD) is not."""


class SolverError(AeroImagingError, ValueError):
    """Raised when a solver receives inputs it cannot work with."""


class FormatError(AeroImagingError):
    """Raised when a data file cannot be parsed."""


class GridIndexError(AeroImagingError, IndexError):
    """Raised when a focus-grid index is out of range."""
