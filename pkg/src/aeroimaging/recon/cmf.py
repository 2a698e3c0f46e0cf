"""Covariance Matrix Fitting and the normal matrix linking it to DAMAS."""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from aeroimaging.array.operators import Csm, PropagationMatrix, SourceMap
from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError
from aeroimaging.recon.solvers import ReconConfig, Reconstruction, projected_gradient

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NormalMatrix:
    """Matrix A of q -> adjoint_csm(forward_csm(q)).

    A = B W with B[n, n'] = |<g_n, g_n'>|^2 and W = diag(|Omega_n|);
    ``steering_power`` is diag(B) = |g_n|^4.
    """

    entries: NDArray[np.float64]
    steering_power: NDArray[np.float64]
    cell_measures: NDArray[np.float64]

    @property
    def size(self) -> int:
        """Number of focus points N."""
        return int(self.entries.shape[0])


def normal_matrix(propagation: PropagationMatrix) -> NormalMatrix:
    """Assemble the CMF normal matrix from a propagation matrix."""
    steering = propagation.steering()
    coherence = np.abs(steering.conj().T @ steering) ** 2
    measures = propagation.grid.cell_measures
    return NormalMatrix(coherence * measures, np.diag(coherence).copy(), measures)


def _check(csm: Csm, propagation: PropagationMatrix) -> None:
    if csm.size != propagation.array.size:
        raise DimensionError(
            Constants.ERROR_CSM_MISMATCH.format(csm=csm.size, array=propagation.array.size)
        )


def _residual(
    q: NDArray[np.float64], csm: Csm, propagation: PropagationMatrix
) -> NDArray[np.complex128]:
    g = propagation.entries
    result: NDArray[np.complex128] = (g * q) @ g.conj().T - csm.entries
    return result


def cmf_objective(
    q: NDArray[np.float64],
    csm: Csm,
    propagation: PropagationMatrix,
    cfg: ReconConfig | None = None,
) -> float:
    """||G diag(q) G^H - C||_F^2 + alpha R(q)."""
    _check(csm, propagation)
    r = _residual(q, csm, propagation)
    value = float(np.sum(r.real**2 + r.imag**2))
    return value + (cfg.penalty_value(q) if cfg is not None else 0.0)


def cmf_gradient(
    q: NDArray[np.float64],
    csm: Csm,
    propagation: PropagationMatrix,
    cfg: ReconConfig | None = None,
) -> NDArray[np.float64]:
    """Gradient 2 Re diag(G^H R G) + alpha grad R(q) with R the CSM residual."""
    _check(csm, propagation)
    g = propagation.entries
    r = _residual(q, csm, propagation)
    data: NDArray[np.float64] = 2.0 * np.einsum("mn,mk,kn->n", g.conj(), r, g).real
    if cfg is None:
        return data
    return data + cfg.penalty_gradient(q)


def cmf_solve(csm: Csm, propagation: PropagationMatrix, cfg: ReconConfig) -> Reconstruction:
    """Fit uncorrelated source powers to the full CSM by projected gradient.

    Raises:
        DimensionError: If the CSM does not match the array.
    """
    _check(csm, propagation)
    q0 = np.zeros(propagation.grid.size)
    q, diagnostics = projected_gradient(
        lambda v: cmf_objective(v, csm, propagation, cfg),
        lambda v: cmf_gradient(v, csm, propagation, cfg),
        q0,
        cfg,
    )
    logger.info(
        "CMF %s in %d iterations (objective %.6g)",
        diagnostics.status,
        diagnostics.iterations,
        diagnostics.final_value,
    )
    return Reconstruction(SourceMap(q, propagation.grid, signed=not cfg.nonneg), diagnostics)
