"""Free-field Green's functions of the convected Helmholtz equation.

All functions broadcast over the leading axes of ``x`` and ``y``; the last
axis holds coordinates.
"""

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import hankel1

from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError, DomainError, SingularPointError
from aeroimaging.physics.flow import FlowConfig, as_points, mach_norm
from aeroimaging.physics.hankel import hankel_h1_0


def _separation(
    x: ArrayLike, y: ArrayLike, flow: FlowConfig
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return ``x - y`` and its Mach norm, rejecting coincident points."""
    diff = as_points(x, flow) - as_points(y, flow)
    distance = mach_norm(diff, flow)
    if np.any(distance < Constants.SINGULAR_DISTANCE):
        raise SingularPointError(
            f"Green's function evaluated within {Constants.SINGULAR_DISTANCE} m "
            "(Mach norm) of its source point"
        )
    return diff, distance


def _require_dimension(flow: FlowConfig, dimension: int) -> None:
    if flow.dimension != dimension:
        raise DimensionError(f"Expected a {dimension}D flow, got dimension {flow.dimension}")


def greens_3d(x: ArrayLike, y: ArrayLike, flow: FlowConfig) -> NDArray[np.complex128]:
    """Three-dimensional convected Green's function.

    g(x, y) = exp((ik/beta^2)(-(x-y).m + |x-y|_m)) / (4 pi |x-y|_m)

    Raises:
        DimensionError: If the flow or points are not three-dimensional.
        SingularPointError: If ``x`` and ``y`` (nearly) coincide.
    """
    _require_dimension(flow, 3)
    diff, distance = _separation(x, y, flow)
    scaled_k = flow.wavenumber / flow.beta_sq
    phase = scaled_k * (distance - diff @ flow.mach_vector)
    result: NDArray[np.complex128] = np.exp(1j * phase) / (4.0 * math.pi * distance)
    return result


def greens_2d(x: ArrayLike, y: ArrayLike, flow: FlowConfig) -> NDArray[np.complex128]:
    """Two-dimensional convected Green's function.

    g(x, y) = (i / (4 beta)) exp(-(ik/beta^2)(x-y).m) H0^(1)((k/beta^2)|x-y|_m)

    Raises:
        DimensionError: If the flow or points are not two-dimensional.
        SingularPointError: If ``x`` and ``y`` (nearly) coincide.
    """
    _require_dimension(flow, 2)
    diff, distance = _separation(x, y, flow)
    scaled_k = flow.wavenumber / flow.beta_sq
    convection = np.exp(-1j * scaled_k * (diff @ flow.mach_vector))
    result: NDArray[np.complex128] = (
        (0.25j / flow.beta) * convection * hankel_h1_0(scaled_k * np.asarray(distance))
    )
    return result


def greens(x: ArrayLike, y: ArrayLike, flow: FlowConfig) -> NDArray[np.complex128]:
    """Green's function for the flow's dimension (2D or 3D)."""
    if flow.dimension == 3:
        return greens_3d(x, y, flow)
    return greens_2d(x, y, flow)


def free_field_greens(
    x: ArrayLike, y: ArrayLike, wavenumber: float, dimension: int
) -> NDArray[np.complex128]:
    """Classical Helmholtz kernel without flow.

    ``exp(ik r) / (4 pi r)`` in 3D and ``(i/4) H0^(1)(k r)`` in 2D. The 2D kernel
    uses scipy's Hankel function, independent of :func:`hankel_h1_0`.

    Raises:
        DimensionError: If ``dimension`` is not 2 or 3 or points disagree with it.
        SingularPointError: If ``x`` and ``y`` (nearly) coincide.
    """
    if dimension not in (2, 3):
        raise DimensionError(f"Dimension must be 2 or 3, got {dimension}")
    diff = np.asarray(x, dtype=np.float64) - np.asarray(y, dtype=np.float64)
    if diff.ndim == 0 or diff.shape[-1] != dimension:
        raise DimensionError(f"Expected points of dimension {dimension}, got shape {diff.shape}")
    r = np.sqrt(np.einsum("...i,...i->...", diff, diff))
    if np.any(r < Constants.SINGULAR_DISTANCE):
        raise SingularPointError("Free-field kernel evaluated at its source point")
    if dimension == 3:
        result: NDArray[np.complex128] = np.exp(1j * wavenumber * r) / (4.0 * math.pi * r)
        return result
    return np.asarray(0.25j * hankel1(0, wavenumber * r), dtype=np.complex128)


def lorentz_reference(x: ArrayLike, y: ArrayLike, flow: FlowConfig) -> NDArray[np.complex128]:
    """Convected Green's function through the Lorentz transformation.

    (1/beta) exp(-(ik/beta^2)(x-y).m) g0(Tx, Ty, k/beta) with T = diag(1/beta, 1, ...)
    and g0 the zero-flow kernel. Only valid for Mach vectors along the first axis;
    rotate with :func:`aeroimaging.physics.flow.aligned_frame` first.

    Raises:
        DomainError: If the Mach vector has components beyond the first.
        SingularPointError: If ``x`` and ``y`` (nearly) coincide.
    """
    m = flow.mach_vector
    if np.any(np.abs(m[1:]) > Constants.GEOMETRY_TOL):
        raise DomainError(f"Lorentz reference needs a Mach vector along the first axis, got {m}")
    diff, _ = _separation(x, y, flow)

    stretch = np.ones(flow.dimension)
    stretch[0] = 1.0 / flow.beta
    kernel = free_field_greens(
        diff * stretch, np.zeros(flow.dimension), flow.wavenumber / flow.beta, flow.dimension
    )
    convection = np.exp(-1j * (flow.wavenumber / flow.beta_sq) * (diff @ m))
    result: NDArray[np.complex128] = convection * kernel / flow.beta
    return result
