"""Far-field asymptotics of the convected Green's functions."""

import cmath
import math
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import ArrayLike, NDArray

from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError, DomainError
from aeroimaging.physics.flow import FlowConfig, as_points, mach_norm

if TYPE_CHECKING:
    from aeroimaging.array.geometry import FocusGrid


def _leading_constant(flow: FlowConfig) -> complex:
    if flow.dimension == 3:
        return 1.0 / (4.0 * math.pi)
    return cmath.exp(0.25j * math.pi) / math.sqrt(8.0 * math.pi * flow.wavenumber)


def _require_unit(xhat: NDArray[np.float64], flow: FlowConfig) -> None:
    if np.any(np.abs(mach_norm(xhat, flow) - 1.0) > Constants.UNIT_DIRECTION_TOL):
        raise DomainError("Direction must have unit Mach norm; use mach_unit() to rescale it")


def far_field_wavevector(xhat: ArrayLike, flow: FlowConfig) -> NDArray[np.float64]:
    """Wavevector (k/beta^2)(m - A xhat) of the far-field factor in ``y``.

    Raises:
        DomainError: If ``xhat`` is not on the Mach unit sphere.
    """
    direction = as_points(xhat, flow)
    _require_unit(direction, flow)
    scaled_k = flow.wavenumber / flow.beta_sq
    result: NDArray[np.float64] = scaled_k * (flow.mach_vector - direction @ flow.mach_matrix)
    return result


def farfield_leading(x: ArrayLike, y: ArrayLike, flow: FlowConfig) -> NDArray[np.complex128]:
    """Leading term of the Green's function for |x| much larger than |y|.

    C(d) h(x) |x|_m^{-(d-1)/2} exp((ik/beta^2)(m - A xhat).y) with
    h(x) = exp((ik/beta^2)(|x|_m - x.m)) and xhat = x / |x|_m.
    C(3) = 1/(4 pi), C(2) = e^{i pi/4} / sqrt(8 pi k).
    """
    xs = as_points(x, flow)
    ys = as_points(y, flow)
    radius = mach_norm(xs, flow)
    if np.any(radius == 0.0):
        raise DomainError("Far-field expansion is undefined at x = 0")
    xhat = xs / radius[..., np.newaxis]

    scaled_k = flow.wavenumber / flow.beta_sq
    h = np.exp(1j * scaled_k * (radius - xs @ flow.mach_vector))
    wavevector = scaled_k * (flow.mach_vector - xhat @ flow.mach_matrix)
    decay = radius ** (-0.5 * (flow.dimension - 1))
    phase = np.einsum("...i,...i->...", wavevector, ys)

    result: NDArray[np.complex128] = _leading_constant(flow) * h * decay * np.exp(1j * phase)
    return result


def plane_wave(y: ArrayLike, xhat: ArrayLike, flow: FlowConfig) -> NDArray[np.complex128]:
    """Plane wave exp((ik/beta^2)(A xhat - m).y) for a direction on the Mach sphere.

    Raises:
        DomainError: If ``xhat`` does not have unit Mach norm.
    """
    ys = as_points(y, flow)
    wavevector = -far_field_wavevector(xhat, flow)
    result: NDArray[np.complex128] = np.exp(1j * np.einsum("...i,...i->...", wavevector, ys))
    return result


def far_field_pattern(
    values: ArrayLike, xhat: ArrayLike, flow: FlowConfig, grid: "FocusGrid"
) -> complex:
    """Midpoint-rule far-field pattern of a grid function.

    sum_n exp((ik/beta^2)(m - A xhat).y_n) v_n |Omega_n|

    Args:
        values: One value per focus point.
        xhat: Direction with unit Mach norm.
        flow: Flow configuration.
        grid: Focus grid carrying points and cell measures.

    Raises:
        DimensionError: If ``values`` does not have one entry per grid point.
        DomainError: If ``xhat`` does not have unit Mach norm.
    """
    v = np.asarray(values)
    if v.shape != (grid.size,):
        raise DimensionError(f"Expected {grid.size} grid values, got shape {v.shape}")
    wavevector = far_field_wavevector(xhat, flow)
    factors = np.exp(1j * (grid.points @ wavevector))
    return complex(np.sum(factors * v * grid.cell_measures))
