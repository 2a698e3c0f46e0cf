"""Random uncorrelated sources, microphone snapshots and CSM estimation.

Every snapshot has its own counter-based random stream keyed by
``(seed, snapshot_index)``; source n uses the n-th pair of normal draws of that
stream. Results are therefore independent of how snapshots are scheduled.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from aeroimaging.array.operators import Csm, PropagationMatrix, SourceMap
from aeroimaging.errors import DimensionError, DomainError

logger = logging.getLogger(__name__)


def _powers(q: SourceMap | ArrayLike) -> NDArray[np.float64]:
    if isinstance(q, SourceMap):
        if q.signed:
            raise DomainError("Source powers must come from a non-negative map")
        return q.values
    values = np.asarray(q, dtype=np.float64)
    if values.ndim != 1:
        raise DimensionError(f"Source powers must be a vector, got shape {values.shape}")
    if not np.all(np.isfinite(values)) or np.any(values < 0.0):
        raise DomainError("Source powers must be finite and non-negative")
    return values


def snapshot_rng(seed: int, snapshot_index: int) -> np.random.Generator:
    """Philox generator for one snapshot of one master seed."""
    if seed < 0 or snapshot_index < 0:
        raise DomainError("Seed and snapshot index must be non-negative")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, snapshot_index])))


@dataclass(frozen=True, eq=False)
class SnapshotEnsemble:
    """L microphone pressure snapshots (rows) drawn from one master seed."""

    pressures: NDArray[np.complex128]
    seed: int
    frequency: float
    provenance: str = ""

    def __post_init__(self) -> None:
        """Require a non-empty (L, M) array and freeze it."""
        pressures = np.array(self.pressures, dtype=np.complex128, copy=True)
        if pressures.ndim != 2 or pressures.shape[0] < 1 or pressures.shape[1] < 1:
            raise DimensionError(
                f"Ensemble needs an (L, M) array with L >= 1, got shape {pressures.shape}"
            )
        pressures.setflags(write=False)
        object.__setattr__(self, "pressures", pressures)

    @property
    def count(self) -> int:
        """Number of snapshots L."""
        return int(self.pressures.shape[0])

    @property
    def channels(self) -> int:
        """Number of microphones M."""
        return int(self.pressures.shape[1])


def sample_amplitudes(
    q: SourceMap | ArrayLike, seed: int, snapshot_index: int
) -> NDArray[np.complex128]:
    """Circularly-symmetric Gaussian source amplitudes with variances ``q``.

    Pi_n = sqrt(q_n) (xi_n + i eta_n) / sqrt(2) with independent standard normals.

    Raises:
        DomainError: If a power is negative or the seed/index is negative.
    """
    powers = _powers(q)
    draws = snapshot_rng(seed, snapshot_index).standard_normal((powers.size, 2))
    result: NDArray[np.complex128] = (
        np.sqrt(powers) * (draws[:, 0] + 1j * draws[:, 1]) / math.sqrt(2.0)
    )
    return result


def simulate_snapshot(
    q: SourceMap | ArrayLike, propagation: PropagationMatrix, seed: int, index: int
) -> NDArray[np.complex128]:
    """Microphone pressures p = G Pi for one snapshot."""
    powers = _powers(q)
    if powers.size != propagation.grid.size:
        raise DimensionError(
            f"Source map has {powers.size} values, matrix has {propagation.grid.size}"
        )
    result: NDArray[np.complex128] = propagation.entries @ sample_amplitudes(powers, seed, index)
    return result


def simulate_ensemble(
    q: SourceMap | ArrayLike,
    propagation: PropagationMatrix,
    seed: int,
    count: int,
    workers: int = 1,
    provenance: str = "",
) -> SnapshotEnsemble:
    """Generate ``count`` snapshots, in parallel when ``workers > 1``.

    Snapshots are collected by index, so the ensemble does not depend on the
    number of workers.
    """
    if count < 1:
        raise DomainError(f"Snapshot count must be at least 1, got {count}")
    powers = _powers(q)

    def snapshot(index: int) -> NDArray[np.complex128]:
        return simulate_snapshot(powers, propagation, seed, index)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(snapshot, range(count)))
    else:
        rows = [snapshot(i) for i in range(count)]

    logger.debug("Simulated %d snapshots (seed=%d, workers=%d)", count, seed, workers)
    return SnapshotEnsemble(np.stack(rows), seed, propagation.flow.frequency, provenance)


def estimate_csm(ensemble: SnapshotEnsemble) -> Csm:
    """Snapshot-averaged CSM (1/L) sum_l p_l p_l^H, accumulated in index order."""
    m = ensemble.channels
    total = np.zeros((m, m), dtype=np.complex128)
    for p in ensemble.pressures:
        total += np.outer(p, p.conj())
    total /= ensemble.count
    return Csm(0.5 * (total + total.conj().T), ensemble.frequency, ensemble.count)


def add_noise(csm: Csm, sigma2: float) -> Csm:
    """Add uncorrelated sensor self-noise sigma^2 I.

    Raises:
        DomainError: If ``sigma2`` is negative or not finite.
    """
    if not (math.isfinite(sigma2) and sigma2 >= 0.0):
        raise DomainError(f"Noise variance must be non-negative, got {sigma2}")
    if sigma2 == 0.0:
        return csm
    noisy = csm.entries + sigma2 * np.eye(csm.size)
    return Csm(noisy, csm.frequency, csm.snapshots)
