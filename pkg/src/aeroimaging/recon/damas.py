"""DAMAS deconvolution of beamformer maps.

The beamformer map estimates cell-integrated powers s_n = q_n |Omega_n|, so both
solvers work on ``s`` internally and return the density ``q``.
"""

import logging

import numpy as np
from numpy.typing import NDArray

from aeroimaging.array.operators import SourceMap
from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError
from aeroimaging.recon.beamforming import PsfMatrix
from aeroimaging.recon.cmf import NormalMatrix
from aeroimaging.recon.solvers import (
    ReconConfig,
    Reconstruction,
    SolverDiagnostics,
    SolverStatus,
    projected_gradient,
    require_finite,
)

logger = logging.getLogger(__name__)


def _check_size(beamformed: SourceMap, n: int) -> None:
    if beamformed.size != n:
        raise DimensionError(f"Beamformer map has {beamformed.size} values, system has {n}")


def damas_gauss_seidel(
    beamformed: SourceMap, psf: PsfMatrix, cfg: ReconConfig
) -> Reconstruction:
    """Solve Psi s = I by Gauss-Seidel sweeps with in-sweep clipping at zero.

    Sweeps run in grid-index order and stop when ||Psi s - I|| / ||I|| <= tol,
    when no entry changes by more than ``STAGNATION_RTOL`` (relative) or after
    ``cfg.max_iter`` sweeps. ``alpha`` and ``penalty`` are ignored.

    Args:
        beamformed: Raw beamformer map I (may be signed).
        psf: Point-spread function on the same grid.
        cfg: Stopping parameters and the non-negativity flag.

    Returns:
        Source-power densities q = s / |Omega| with sweep diagnostics.

    Raises:
        DimensionError: If map and PSF sizes differ.
        SolverError: If inputs are not finite.
    """
    _check_size(beamformed, psf.size)
    rhs = beamformed.values
    system = psf.entries
    require_finite("Beamformer map", rhs)
    require_finite("PSF", system)

    n = psf.size
    s = np.zeros(n)
    rhs_norm = float(np.linalg.norm(rhs))
    history: list[float] = []
    status = SolverStatus.MAX_ITER
    sweep = 0
    for sweep in range(1, cfg.max_iter + 1):
        previous = s.copy()
        for i in range(n):
            update = (rhs[i] - system[i] @ s + system[i, i] * s[i]) / system[i, i]
            s[i] = max(0.0, update) if cfg.nonneg else update

        residual = float(np.linalg.norm(system @ s - rhs))
        relative = residual / rhs_norm if rhs_norm > 0.0 else residual
        history.append(relative)
        if not np.isfinite(relative):
            status = SolverStatus.DIVERGED
            break
        if relative <= cfg.tol:
            status = SolverStatus.CONVERGED
            break
        change = float(np.max(np.abs(s - previous)))
        if change <= Constants.STAGNATION_RTOL * float(np.max(np.abs(s))):
            status = SolverStatus.STAGNANT
            break

    logger.info("DAMAS Gauss-Seidel %s after %d sweeps", status, sweep)
    diagnostics = SolverDiagnostics(status, sweep, tuple(history), history[-1])
    q = s / psf.grid.cell_measures
    return Reconstruction(SourceMap(q, psf.grid, signed=not cfg.nonneg), diagnostics)


def damas_system(
    beamformed: SourceMap, system: PsfMatrix | NormalMatrix
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Linear system (matrix, right-hand side) in the density q.

    A :class:`PsfMatrix` gives Psi W q = I; a :class:`NormalMatrix` gives
    A q = I * |g_n|^4, the beamformer map rescaled by ||P_n||_F^2.
    """
    _check_size(beamformed, system.size)
    if isinstance(system, PsfMatrix):
        matrix = system.entries * system.grid.cell_measures
        return matrix, beamformed.values.copy()
    return system.entries, beamformed.values * system.steering_power


def damas_tikhonov(
    beamformed: SourceMap, system: PsfMatrix | NormalMatrix, cfg: ReconConfig
) -> Reconstruction:
    """Regularised DAMAS: minimise ||M q - b||^2 + alpha R(q) over q >= 0.

    The type of ``system`` selects the right-hand-side form (see
    :func:`damas_system`). Uses the same projected-gradient engine as CMF.

    Raises:
        DimensionError: If map and system sizes differ.
        SolverError: If inputs are not finite.
    """
    matrix, rhs = damas_system(beamformed, system)
    require_finite("DAMAS system", matrix)
    require_finite("Beamformer map", rhs)

    def objective(q: NDArray[np.float64]) -> float:
        r = matrix @ q - rhs
        return float(r @ r) + cfg.penalty_value(q)

    def gradient(q: NDArray[np.float64]) -> NDArray[np.float64]:
        result: NDArray[np.float64] = 2.0 * matrix.T @ (matrix @ q - rhs)
        return result + cfg.penalty_gradient(q)

    q, diagnostics = projected_gradient(objective, gradient, np.zeros(matrix.shape[1]), cfg)
    logger.info(
        "DAMAS Tikhonov %s in %d iterations (objective %.6g)",
        diagnostics.status,
        diagnostics.iterations,
        diagnostics.final_value,
    )
    return Reconstruction(SourceMap(q, beamformed.grid, signed=not cfg.nonneg), diagnostics)
