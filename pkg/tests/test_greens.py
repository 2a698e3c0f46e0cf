"""Tests for the convected Green's functions."""

import math

import numpy as np
import pytest
from scipy.special import hankel1

from aeroimaging.errors import DimensionError, DomainError, SingularPointError
from aeroimaging.physics.flow import FlowConfig, aligned_frame
from aeroimaging.physics.greens import (
    free_field_greens,
    greens,
    greens_2d,
    greens_3d,
    lorentz_reference,
)


def _pairs(dimension: int, count: int = 30) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(dimension)
    x = rng.uniform(-2.0, 2.0, (count, dimension))
    y = rng.uniform(-2.0, 2.0, (count, dimension)) + 5.0
    return x, y


class TestGreens3d:
    """Tests for greens_3d."""

    def test_zero_flow_unit_distance(self) -> None:
        """Test g(e1, 0) = 1 / (4 pi) for k = 2 pi without flow."""
        flow = FlowConfig.quiescent(3, sound_speed=343.0, frequency=343.0)

        value = complex(greens_3d([1.0, 0.0, 0.0], [0.0, 0.0, 0.0], flow))

        assert value.real == pytest.approx(1.0 / (4.0 * math.pi), abs=1e-14)
        assert value.imag == pytest.approx(0.0, abs=1e-14)

    def test_zero_flow_matches_free_field(self) -> None:
        """Test that m = 0 reduces to exp(ikr) / (4 pi r)."""
        flow = FlowConfig.quiescent(3, frequency=1500.0)
        x, y = _pairs(3)

        np.testing.assert_allclose(
            greens_3d(x, y, flow), free_field_greens(x, y, flow.wavenumber, 3), rtol=1e-13
        )

    def test_modulus_symmetric_phase_reversed(self) -> None:
        """Test g(x, y; m) = g(y, x; -m) and |g(x, y)| = |g(y, x)|."""
        flow = FlowConfig((0.3, -0.1, 0.2), frequency=900.0)
        reverse = FlowConfig((-0.3, 0.1, -0.2), frequency=900.0)
        x, y = _pairs(3)

        forward = greens_3d(x, y, flow)
        np.testing.assert_allclose(np.abs(forward), np.abs(greens_3d(y, x, flow)), rtol=1e-13)
        np.testing.assert_allclose(forward, greens_3d(y, x, reverse), rtol=1e-12)

    def test_broadcasting(self) -> None:
        """Test that (M, 1, 3) against (1, N, 3) gives an M x N matrix."""
        flow = FlowConfig((0.1, 0.0, 0.0))
        x = np.zeros((4, 1, 3))
        x[:, 0, 0] = np.arange(4)
        y = np.ones((1, 6, 3)) * 10.0
        y[0, :, 1] = np.arange(6)

        assert greens_3d(x, y, flow).shape == (4, 6)

    def test_singular_point(self) -> None:
        """Test that coincident points raise SingularPointError."""
        with pytest.raises(SingularPointError):
            greens_3d([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], FlowConfig((0.2, 0.0, 0.0)))

    def test_wrong_dimension(self) -> None:
        """Test that a 2D flow is rejected by the 3D kernel."""
        with pytest.raises(DimensionError):
            greens_3d([1.0, 0.0], [0.0, 0.0], FlowConfig((0.2, 0.0)))


class TestGreens2d:
    """Tests for greens_2d."""

    def test_zero_flow_matches_scipy(self) -> None:
        """Test that m = 0 reduces to (i/4) H0(k r)."""
        flow = FlowConfig.quiescent(2, frequency=700.0)
        x, y = _pairs(2)
        r = np.linalg.norm(x - y, axis=1)

        np.testing.assert_allclose(
            greens_2d(x, y, flow), 0.25j * hankel1(0, flow.wavenumber * r), rtol=1e-10
        )

    def test_dispatch_by_dimension(self) -> None:
        """Test that greens() picks the kernel from the flow dimension."""
        flow = FlowConfig((0.2, 0.1), frequency=500.0)
        x, y = _pairs(2)

        np.testing.assert_array_equal(greens(x, y, flow), greens_2d(x, y, flow))

    def test_wrong_dimension(self) -> None:
        """Test that a 3D flow is rejected by the 2D kernel."""
        with pytest.raises(DimensionError):
            greens_2d([1.0, 0.0, 0.0], [0.0, 0.0, 0.0], FlowConfig((0.2, 0.0, 0.0)))


class TestLorentzReference:
    """Tests for the Lorentz-transformed reference."""

    @pytest.mark.parametrize(
        "mach", [(0.15, 0.0, 0.0), (0.6, 0.0, 0.0), (0.3, 0.0), (0.85, 0.0), (0.0, 0.0, 0.0)]
    )
    def test_agrees_with_direct_formula(self, mach: tuple[float, ...]) -> None:
        """Test that both routes to the Green's function agree to 1e-10."""
        flow = FlowConfig(mach, frequency=3000.0)
        x, y = _pairs(flow.dimension)

        direct = greens(x, y, flow)
        reference = lorentz_reference(x, y, flow)

        assert np.max(np.abs(direct - reference) / np.abs(reference)) < 1e-10

    def test_general_direction_through_aligned_frame(self) -> None:
        """Test agreement for an oblique Mach vector after the change of frame."""
        flow = FlowConfig((0.2, 0.3, -0.25), frequency=2500.0)
        rotation, aligned = aligned_frame(flow)
        x, y = _pairs(3)

        direct = greens(x, y, flow)
        reference = lorentz_reference(x @ rotation.T, y @ rotation.T, aligned)

        assert np.max(np.abs(direct - reference) / np.abs(reference)) < 1e-10

    def test_oblique_flow_rejected(self) -> None:
        """Test that a Mach vector off the first axis raises DomainError."""
        with pytest.raises(DomainError):
            lorentz_reference([1.0, 0.0, 0.0], [0.0, 0.0, 0.0], FlowConfig((0.1, 0.2, 0.0)))


class TestFreeField:
    """Tests for free_field_greens."""

    def test_invalid_dimension(self) -> None:
        """Test that only 2 and 3 dimensions are accepted."""
        with pytest.raises(DimensionError):
            free_field_greens([1.0], [0.0], 1.0, 1)

    def test_singular(self) -> None:
        """Test that r = 0 raises SingularPointError."""
        with pytest.raises(SingularPointError):
            free_field_greens([0.0, 0.0], [0.0, 0.0], 1.0, 2)
