"""Conventional beamforming, point-spread functions and map normalisation."""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from aeroimaging.array.geometry import FocusGrid, MicArray
from aeroimaging.array.operators import Csm, SourceMap, adjoint_from_steering, steering_matrix
from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError, DomainError
from aeroimaging.physics.flow import FlowConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PsfMatrix:
    """Discrete point-spread function Psi with its row scaling.

    Psi[n, n'] is the beamformer response at y_n to a unit monopole at y_n'.
    ``steering_power`` holds |g_n|^4 = ||P_n||_F^2, the diagonal D with
    D Psi = B, B[n, n'] = |<g_n, g_n'>|^2.
    """

    entries: NDArray[np.float64]
    steering_power: NDArray[np.float64]
    grid: FocusGrid

    @property
    def size(self) -> int:
        """Number of focus points N."""
        return int(self.entries.shape[0])

    def row(self, index: int) -> NDArray[np.float64]:
        """Psi(y_index, .) as a vector over the grid."""
        result: NDArray[np.float64] = self.entries[self.grid.check_index(index)]
        return result

    def column(self, index: int) -> NDArray[np.float64]:
        """Psi(., y_index): the beamformer map of a unit monopole at y_index."""
        result: NDArray[np.float64] = self.entries[:, self.grid.check_index(index)]
        return result


@dataclass(frozen=True, eq=False)
class NormalizedMap:
    """Map scaled to max 1 and the mask of entries at or above the threshold."""

    values: NDArray[np.float64]
    visible: NDArray[np.bool_]
    threshold: float
    peak: float


def beamform(csm: Csm, array: MicArray, grid: FocusGrid, flow: FlowConfig) -> SourceMap:
    """Conventional beamformer I(y_n) = Re(g_n^H C g_n) / |g_n|^4.

    The raw map is signed: negative values from noisy data are kept.

    Raises:
        DimensionError: If the CSM size does not match the array.
    """
    if csm.size != array.size:
        raise DimensionError(
            Constants.ERROR_CSM_MISMATCH.format(csm=csm.size, array=array.size)
        )
    s = steering_matrix(array, grid, flow)
    power = np.sum(np.abs(s) ** 2, axis=0) ** 2
    if np.any(power == 0.0):
        raise DomainError("Zero steering vector; check the geometry")
    values = adjoint_from_steering(csm.entries, s) / power
    return SourceMap(values, grid, signed=True)


def psf_from_steering(steering: NDArray[np.complex128], grid: FocusGrid) -> PsfMatrix:
    """Row-normalised PSF from a matrix of bare steering vectors."""
    coherence = np.abs(steering.conj().T @ steering) ** 2
    power = np.diag(coherence).copy()
    entries = coherence / power[:, np.newaxis]
    np.fill_diagonal(entries, 1.0)
    return PsfMatrix(entries, power, grid)


def psf_matrix(array: MicArray, grid: FocusGrid, flow: FlowConfig) -> PsfMatrix:
    """PSF Psi[n, n'] = |<g_n', g_n>|^2 / |g_n|^4 on the whole grid."""
    psf = psf_from_steering(steering_matrix(array, grid, flow), grid)
    logger.debug("PSF matrix for %d focus points", grid.size)
    return psf


def normalize_map(q: SourceMap, threshold: float = Constants.DEFAULT_THRESHOLD) -> NormalizedMap:
    """Scale a map to a peak of 1 and hide entries below ``threshold``.

    A map without a positive entry gives zeros and an empty mask.

    Raises:
        DomainError: If ``threshold`` lies outside [0, 1].
    """
    if not 0.0 <= threshold <= 1.0:
        raise DomainError(f"Threshold must lie in [0, 1], got {threshold}")
    peak = float(np.max(q.values))
    if peak <= 0.0:
        zeros = np.zeros(q.size)
        return NormalizedMap(zeros, np.zeros(q.size, dtype=bool), threshold, 0.0)
    values = q.values / peak
    values[int(np.argmax(q.values))] = 1.0
    return NormalizedMap(values, values >= threshold, threshold, peak)
