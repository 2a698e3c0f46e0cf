"""Reconstruction: beamforming, DAMAS and covariance matrix fitting."""

from aeroimaging.recon.beamforming import (
    NormalizedMap,
    PsfMatrix,
    beamform,
    normalize_map,
    psf_matrix,
)
from aeroimaging.recon.cmf import (
    NormalMatrix,
    cmf_gradient,
    cmf_objective,
    cmf_solve,
    normal_matrix,
)
from aeroimaging.recon.damas import damas_gauss_seidel, damas_tikhonov
from aeroimaging.recon.solvers import (
    Penalty,
    ReconConfig,
    Reconstruction,
    SolverDiagnostics,
    SolverStatus,
)

__all__ = [
    "NormalMatrix",
    "NormalizedMap",
    "Penalty",
    "PsfMatrix",
    "ReconConfig",
    "Reconstruction",
    "SolverDiagnostics",
    "SolverStatus",
    "beamform",
    "cmf_gradient",
    "cmf_objective",
    "cmf_solve",
    "damas_gauss_seidel",
    "damas_tikhonov",
    "normal_matrix",
    "normalize_map",
    "psf_matrix",
]
