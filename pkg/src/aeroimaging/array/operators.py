"""Discrete forward operator, steering objects and the adjoint.

Scaling convention: :class:`PropagationMatrix` columns carry ``|Omega_n|^{1/2}``;
steering vectors and monopole matrices are bare Green's function values.
"""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from aeroimaging.array.geometry import FocusGrid, MicArray, check_disjoint
from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError, DomainError, HermitianError
from aeroimaging.physics.flow import FlowConfig
from aeroimaging.physics.greens import greens

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SourceMap:
    """Source powers q(y_n) on a focus grid.

    Maps are non-negative unless ``signed`` is set, which only raw beamformer
    output does.
    """

    values: NDArray[np.float64]
    grid: FocusGrid
    signed: bool = False

    def __post_init__(self) -> None:
        """Validate length, finiteness and sign."""
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape != (self.grid.size,):
            raise DimensionError(
                f"Source map needs {self.grid.size} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("Source map values must be finite")
        if not self.signed and np.any(values < 0.0):
            raise DomainError("Source powers must be non-negative")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, grid: FocusGrid) -> "SourceMap":
        """All-zero map on ``grid``."""
        return cls(np.zeros(grid.size), grid)

    @classmethod
    def point_sources(cls, grid: FocusGrid, powers: dict[int, float]) -> "SourceMap":
        """Map that is zero except at the given grid indices."""
        values = np.zeros(grid.size)
        for index, power in powers.items():
            values[grid.check_index(index)] += power
        return cls(values, grid)

    @property
    def size(self) -> int:
        """Number of grid values N."""
        return int(self.values.shape[0])

    def integrated(self) -> NDArray[np.float64]:
        """Cell-integrated powers q_n |Omega_n|."""
        result: NDArray[np.float64] = self.values * self.grid.cell_measures
        return result


@dataclass(frozen=True, eq=False)
class PropagationMatrix:
    """M x N matrix with entries g(x_m, y_n) |Omega_n|^{1/2} and its provenance."""

    entries: NDArray[np.complex128]
    array: MicArray
    grid: FocusGrid
    flow: FlowConfig

    def __post_init__(self) -> None:
        """Freeze the entries and check their shape."""
        entries = np.array(self.entries, dtype=np.complex128, copy=True)
        if entries.shape != (self.array.size, self.grid.size):
            raise DimensionError(
                f"Propagation matrix must be {self.array.size}x{self.grid.size}, "
                f"got {entries.shape}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def shape(self) -> tuple[int, int]:
        """(M, N)."""
        return self.array.size, self.grid.size

    def steering(self) -> NDArray[np.complex128]:
        """Bare steering vectors as columns (cell-measure factor removed)."""
        result: NDArray[np.complex128] = self.entries / np.sqrt(self.grid.cell_measures)
        return result


@dataclass(frozen=True, eq=False)
class Csm:
    """Hermitian positive semi-definite cross-spectral matrix.

    ``snapshots`` is 0 for a matrix synthesised exactly from source powers.
    """

    entries: NDArray[np.complex128]
    frequency: float
    snapshots: int = 0

    def __post_init__(self) -> None:
        """Check shape, finiteness, Hermitian symmetry and semi-definiteness."""
        entries = np.array(self.entries, dtype=np.complex128, copy=True)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] == 0:
            raise DimensionError(f"CSM must be a non-empty square matrix, got {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise HermitianError("CSM entries must be finite")
        if self.snapshots < 0:
            raise DomainError(f"Snapshot count must be non-negative, got {self.snapshots}")
        check_hermitian(entries, psd=True)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "frequency", float(self.frequency))

    @property
    def size(self) -> int:
        """Number of microphones M."""
        return int(self.entries.shape[0])


def check_hermitian(matrix: NDArray[np.complex128], psd: bool = False) -> None:
    """Validate Hermitian symmetry (and optionally semi-definiteness).

    Hermitian to ``HERMITIAN_RTOL`` relative to the largest entry; PSD means a
    smallest eigenvalue of at least ``-PSD_RTOL * ||C||_2``.

    Raises:
        HermitianError: If a condition is violated.
    """
    scale = float(np.max(np.abs(matrix))) if matrix.size else 0.0
    skew = float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0
    if skew > Constants.HERMITIAN_RTOL * scale:
        raise HermitianError(f"Matrix is not Hermitian (defect {skew:.3g}, scale {scale:.3g})")
    if psd and scale > 0.0:
        eig = np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))
        bound = Constants.PSD_RTOL * float(np.max(np.abs(eig)))
        if eig[0] < -bound:
            raise HermitianError(
                f"Matrix is not positive semi-definite (min eigenvalue {eig[0]:.3g})"
            )


def _hermitian_part(matrix: NDArray[np.complex128]) -> NDArray[np.complex128]:
    result: NDArray[np.complex128] = 0.5 * (matrix + matrix.conj().T)
    return result


def steering_matrix(array: MicArray, grid: FocusGrid, flow: FlowConfig) -> NDArray[np.complex128]:
    """M x N matrix of bare steering vectors g(x_m, y_n).

    Raises:
        GeometryError: If microphones and source region overlap.
    """
    check_disjoint(array, grid)
    if flow.dimension != array.dimension:
        raise DimensionError(f"Flow is {flow.dimension}D but the geometry is {array.dimension}D")
    return greens(array.positions[:, np.newaxis, :], grid.points[np.newaxis, :, :], flow)


def steering_vector(
    n: int, array: MicArray, grid: FocusGrid, flow: FlowConfig
) -> NDArray[np.complex128]:
    """Steering vector (g(x_1, y_n), ..., g(x_M, y_n)) without cell-measure factor.

    Raises:
        GridIndexError: If ``n`` is out of range.
    """
    grid.check_index(n)
    check_disjoint(array, grid)
    return greens(array.positions, grid.points[n], flow)


def propagation_matrix(array: MicArray, grid: FocusGrid, flow: FlowConfig) -> PropagationMatrix:
    """Forward matrix with column n = steering_vector(n) * |Omega_n|^{1/2}."""
    entries = steering_matrix(array, grid, flow) * np.sqrt(grid.cell_measures)
    logger.debug("Propagation matrix %dx%d at f=%g Hz", array.size, grid.size, flow.frequency)
    return PropagationMatrix(entries, array, grid, flow)


def forward_csm(q: SourceMap, propagation: PropagationMatrix) -> Csm:
    """Exact CSM G diag(q) G^H of uncorrelated sources.

    Raises:
        DimensionError: If the map and matrix disagree on N.
        DomainError: If ``q`` is a signed map.
    """
    if q.size != propagation.grid.size:
        raise DimensionError(f"Source map has {q.size} values, matrix has {propagation.grid.size}")
    if q.signed:
        raise DomainError("Forward CSM needs a non-negative source map")
    g = propagation.entries
    matrix = (g * q.values) @ g.conj().T
    return Csm(_hermitian_part(matrix), propagation.flow.frequency)


def monopole_matrix(
    n: int, array: MicArray, grid: FocusGrid, flow: FlowConfig
) -> NDArray[np.complex128]:
    """Rank-one steering matrix P_n = g_n g_n^H (no cell-measure factor)."""
    g = steering_vector(n, array, grid, flow)
    return np.outer(g, g.conj())


def adjoint_csm(
    k: Csm | ArrayLike, array: MicArray, grid: FocusGrid, flow: FlowConfig
) -> NDArray[np.float64]:
    """Monopole-operator adjoint: component n is Re(g_n^H K g_n).

    Raises:
        DimensionError: If K is not M x M.
        HermitianError: If K is not Hermitian within tolerance.
    """
    matrix = k.entries if isinstance(k, Csm) else np.asarray(k, dtype=np.complex128)
    if matrix.shape != (array.size, array.size):
        raise DimensionError(f"Expected a {array.size}x{array.size} matrix, got {matrix.shape}")
    check_hermitian(matrix)
    s = steering_matrix(array, grid, flow)
    return adjoint_from_steering(matrix, s)


def adjoint_from_steering(
    matrix: NDArray[np.complex128], steering: NDArray[np.complex128]
) -> NDArray[np.float64]:
    """Re(s_n^H K s_n) for every column s_n of ``steering``."""
    result: NDArray[np.float64] = np.einsum("mn,mk,kn->n", steering.conj(), matrix, steering).real
    return result


def vec_linearization(propagation: PropagationMatrix) -> NDArray[np.complex128]:
    """M^2 x N matrix whose column n is vec(|Omega_n| g_n g_n^H) (row-major vec)."""
    g = propagation.entries
    m, n = g.shape
    return np.einsum("in,jn->ijn", g, g.conj()).reshape(m * m, n)
