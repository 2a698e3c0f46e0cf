"""Tests for DAMAS deconvolution."""

import numpy as np
import pytest
from scipy.optimize import nnls

from aeroimaging.array.geometry import FocusGrid, MicArray
from aeroimaging.array.operators import (
    Csm,
    PropagationMatrix,
    SourceMap,
    forward_csm,
    propagation_matrix,
)
from aeroimaging.config.scenario import Scenario
from aeroimaging.errors import DimensionError, SolverError
from aeroimaging.physics.flow import FlowConfig
from aeroimaging.recon.beamforming import PsfMatrix, beamform, psf_matrix
from aeroimaging.recon.cmf import normal_matrix
from aeroimaging.recon.damas import damas_gauss_seidel, damas_system, damas_tikhonov
from aeroimaging.recon.solvers import ReconConfig, SolverStatus

EXACT = ReconConfig(tol=1e-13, max_iter=20000)


@pytest.fixture
def truth(grid: FocusGrid) -> SourceMap:
    """Two point sources on the small grid."""
    return SourceMap.point_sources(grid, {2: 1.0, 6: 0.5})


@pytest.fixture
def beam(
    truth: SourceMap,
    array: MicArray,
    grid: FocusGrid,
    flow: FlowConfig,
    propagation: PropagationMatrix,
) -> SourceMap:
    """Beamformer map of the noise-free CSM of ``truth``."""
    return beamform(forward_csm(truth, propagation), array, grid, flow)


@pytest.fixture
def psf(array: MicArray, grid: FocusGrid, flow: FlowConfig) -> PsfMatrix:
    """PSF of the small problem."""
    return psf_matrix(array, grid, flow)


class TestGaussSeidel:
    """Tests for damas_gauss_seidel."""

    def test_recovers_point_sources(
        self, beam: SourceMap, psf: PsfMatrix, truth: SourceMap
    ) -> None:
        """Test noise-free recovery of the true densities."""
        result = damas_gauss_seidel(beam, psf, EXACT)

        assert result.diagnostics.status.converged
        np.testing.assert_allclose(result.source_map.values, truth.values, atol=1e-8)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_residual_never_increases(self, seed: int) -> None:
        """Test that the residual does not grow between sweeps on exact default-scenario data."""
        scenario = Scenario.default()
        array, grid, flow = scenario.build_array(), scenario.build_grid(), scenario.build_flow()
        rng = np.random.default_rng(seed)
        truth = SourceMap(rng.uniform(0.0, 1.0, grid.size), grid)
        csm = forward_csm(truth, propagation_matrix(array, grid, flow))

        result = damas_gauss_seidel(
            beamform(csm, array, grid, flow),
            psf_matrix(array, grid, flow),
            ReconConfig(tol=1e-13, max_iter=2000),
        )

        history = np.array(result.diagnostics.history)
        assert len(history) > 1
        assert np.all(np.diff(history) <= 1e-14)

    def test_zero_map_gives_zero(self, array: MicArray, grid: FocusGrid, flow: FlowConfig) -> None:
        """Test that I = 0 gives q = 0 after one sweep."""
        zero = Csm(np.zeros((array.size, array.size), dtype=np.complex128), flow.frequency)
        result = damas_gauss_seidel(
            beamform(zero, array, grid, flow), psf_matrix(array, grid, flow), ReconConfig()
        )

        np.testing.assert_array_equal(result.source_map.values, 0.0)
        assert result.diagnostics.status is SolverStatus.CONVERGED
        assert result.diagnostics.iterations == 1

    def test_iteration_limit(self, beam: SourceMap, psf: PsfMatrix) -> None:
        """Test that a single sweep reports max-iter with a partial map."""
        result = damas_gauss_seidel(beam, psf, ReconConfig(max_iter=1))

        assert result.diagnostics.status is SolverStatus.MAX_ITER
        assert not result.diagnostics.status.converged
        assert len(result.diagnostics.history) == 1
        assert np.all(result.source_map.values >= 0.0)

    def test_non_negative_output(self, psf: PsfMatrix, grid: FocusGrid) -> None:
        """Test that negative beamformer values are clipped away."""
        raw = SourceMap(np.linspace(-1.0, 1.0, grid.size), grid, signed=True)
        result = damas_gauss_seidel(raw, psf, ReconConfig(max_iter=50))

        assert np.all(result.source_map.values >= 0.0)
        assert not result.source_map.signed

    def test_size_mismatch(self, psf: PsfMatrix) -> None:
        """Test that a map on another grid raises DimensionError."""
        other = FocusGrid.regular((0.0, 0.0, 2.0), (0.25, 0.0, 2.0), 0.25)

        with pytest.raises(DimensionError):
            damas_gauss_seidel(SourceMap.zeros(other), psf, ReconConfig())

    def test_non_finite_psf(self, beam: SourceMap, psf: PsfMatrix, grid: FocusGrid) -> None:
        """Test that a PSF with NaN entries raises SolverError."""
        broken = psf.entries.copy()
        broken[0, 1] = np.nan

        with pytest.raises(SolverError):
            damas_gauss_seidel(beam, PsfMatrix(broken, psf.steering_power, grid), ReconConfig())


class TestTikhonov:
    """Tests for damas_tikhonov and damas_system."""

    def test_psf_form_matches_truth(
        self, beam: SourceMap, psf: PsfMatrix, truth: SourceMap
    ) -> None:
        """Test that alpha = 0 on Psi W q = I recovers the sources."""
        result = damas_tikhonov(beam, psf, EXACT)

        np.testing.assert_allclose(result.source_map.values, truth.values, atol=1e-6)

    def test_normal_form_matches_gauss_seidel(
        self, beam: SourceMap, psf: PsfMatrix, propagation: PropagationMatrix
    ) -> None:
        """Test that the normal-matrix form agrees with Gauss-Seidel."""
        gauss_seidel = damas_gauss_seidel(beam, psf, EXACT).source_map.values
        tikhonov = damas_tikhonov(beam, normal_matrix(propagation), EXACT).source_map.values

        np.testing.assert_allclose(tikhonov, gauss_seidel, atol=1e-6)

    def test_regularisation_shrinks(self, beam: SourceMap, psf: PsfMatrix) -> None:
        """Test that a large alpha gives a smaller solution."""
        free = damas_tikhonov(beam, psf, EXACT).source_map.values
        damped = damas_tikhonov(beam, psf, ReconConfig(alpha=1e-2, tol=1e-13)).source_map.values

        assert np.linalg.norm(damped) < np.linalg.norm(free)

    def test_objective_never_increases(self, beam: SourceMap, psf: PsfMatrix) -> None:
        """Test that the recorded objective is monotone."""
        history = damas_tikhonov(beam, psf, EXACT).diagnostics.history

        assert all(b <= a for a, b in zip(history, history[1:], strict=False))

    def test_system_forms(
        self, beam: SourceMap, psf: PsfMatrix, truth: SourceMap, propagation: PropagationMatrix
    ) -> None:
        """Test that the true densities solve both linear systems."""
        for system in (psf, normal_matrix(propagation)):
            matrix, rhs = damas_system(beam, system)
            np.testing.assert_allclose(matrix @ truth.values, rhs, rtol=1e-10, atol=1e-14)

    def test_matches_reference_nnls(self, beam: SourceMap, psf: PsfMatrix, grid: FocusGrid) -> None:
        """Test the unregularised PSF form against scipy's NNLS on a perturbed map."""
        rng = np.random.default_rng(5)
        scale = 0.01 * float(beam.values.max())
        noisy = SourceMap(beam.values + scale * rng.standard_normal(grid.size), grid, signed=True)
        matrix, rhs = damas_system(noisy, psf)
        reference, _ = nnls(matrix, rhs)

        result = damas_tikhonov(noisy, psf, EXACT)

        np.testing.assert_allclose(result.source_map.values, reference, atol=1e-5)
