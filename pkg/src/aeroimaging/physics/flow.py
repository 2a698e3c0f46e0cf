"""Uniform subsonic flow and the Mach-scaled geometry it induces."""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError, DomainError


@dataclass(frozen=True)
class FlowConfig:
    """Mean flow, medium and frequency of one imaging problem.

    The wavenumber is derived from frequency and speed of sound and is never
    given directly.
    """

    mach: tuple[float, ...]
    sound_speed: float = Constants.DEFAULT_SOUND_SPEED
    frequency: float = Constants.DEFAULT_FREQUENCY

    def __post_init__(self) -> None:
        """Validate dimension, subsonic Mach number and positive scalars."""
        mach = tuple(float(c) for c in self.mach)
        object.__setattr__(self, "mach", mach)

        if len(mach) not in (2, 3):
            raise DimensionError(f"Mach vector must have 2 or 3 components, got {len(mach)}")
        if not all(math.isfinite(c) for c in mach):
            raise DomainError(f"Mach vector must be finite, got {mach}")
        if math.fsum(c * c for c in mach) >= 1.0:
            raise DomainError(f"Flow must be subsonic (|m| < 1), got |m| = {self.mach_number}")
        if not (math.isfinite(self.sound_speed) and self.sound_speed > 0):
            raise DomainError(f"Speed of sound must be positive, got {self.sound_speed}")
        if not (math.isfinite(self.frequency) and self.frequency > 0):
            raise DomainError(f"Frequency must be positive, got {self.frequency}")

    @classmethod
    def quiescent(
        cls,
        dimension: int = 3,
        sound_speed: float = Constants.DEFAULT_SOUND_SPEED,
        frequency: float = Constants.DEFAULT_FREQUENCY,
    ) -> "FlowConfig":
        """Flow configuration without mean flow (m = 0)."""
        return cls((0.0,) * dimension, sound_speed, frequency)

    @property
    def dimension(self) -> int:
        """Spatial dimension d."""
        return len(self.mach)

    @property
    def mach_vector(self) -> NDArray[np.float64]:
        """Mach vector as a fresh numpy array."""
        return np.array(self.mach, dtype=np.float64)

    @property
    def mach_number(self) -> float:
        """Euclidean length |m|."""
        return math.sqrt(math.fsum(c * c for c in self.mach))

    @property
    def beta_sq(self) -> float:
        """Compressibility factor beta^2 = 1 - |m|^2."""
        return 1.0 - math.fsum(c * c for c in self.mach)

    @property
    def beta(self) -> float:
        """Square root of ``beta_sq``."""
        return math.sqrt(self.beta_sq)

    @property
    def wavenumber(self) -> float:
        """Acoustic wavenumber k = 2 pi f / c."""
        return 2.0 * math.pi * self.frequency / self.sound_speed

    @property
    def mach_matrix(self) -> NDArray[np.float64]:
        """Symmetric positive definite matrix A = m m^T + beta^2 I."""
        m = self.mach_vector
        return np.outer(m, m) + self.beta_sq * np.eye(self.dimension)


def as_points(x: ArrayLike, flow: FlowConfig) -> NDArray[np.float64]:
    """Convert ``x`` to a float array whose last axis has length ``flow.dimension``.

    Raises:
        DimensionError: If the trailing axis does not match the flow dimension.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0 or arr.shape[-1] != flow.dimension:
        raise DimensionError(
            f"Expected points of dimension {flow.dimension}, got array of shape {arr.shape}"
        )
    return arr


def mach_norm(x: ArrayLike, flow: FlowConfig) -> NDArray[np.float64]:
    """Mach-scaled distance sqrt((x.m)^2 + beta^2 |x|^2).

    Vectorised over all leading axes of ``x``; the result has shape ``x.shape[:-1]``.

    Raises:
        DimensionError: If the trailing axis of ``x`` does not match the flow.
    """
    pts = as_points(x, flow)
    along = pts @ flow.mach_vector
    result: NDArray[np.float64] = np.sqrt(
        along * along + flow.beta_sq * np.einsum("...i,...i->...", pts, pts)
    )
    return result


def mach_unit(direction: ArrayLike, flow: FlowConfig) -> NDArray[np.float64]:
    """Rescale non-zero directions to unit Mach norm (points of the Mach sphere).

    Raises:
        DomainError: If a direction is the zero vector.
    """
    pts = as_points(direction, flow)
    norm = mach_norm(pts, flow)
    if np.any(norm == 0.0):
        raise DomainError("Cannot normalise the zero vector to the Mach sphere")
    result: NDArray[np.float64] = pts / norm[..., np.newaxis]
    return result


def aligned_frame(flow: FlowConfig) -> tuple[NDArray[np.float64], FlowConfig]:
    """Orthogonal change of frame that turns the Mach vector onto the first axis.

    Returns a Householder reflection ``R`` (symmetric and orthogonal) with
    ``R @ m = |m| e_1`` together with the flow expressed in the rotated frame.
    Green's functions are invariant under ``x -> R x, y -> R y, m -> R m``.

    Args:
        flow: Flow with an arbitrary Mach direction.

    Returns:
        Tuple of the reflection matrix and the axis-aligned flow.
    """
    d = flow.dimension
    magnitude = flow.mach_number
    aligned = FlowConfig(
        (magnitude,) + (0.0,) * (d - 1),
        flow.sound_speed,
        flow.frequency,
    )
    if magnitude == 0.0:
        return np.eye(d), aligned

    v = flow.mach_vector / magnitude
    v[0] -= 1.0
    vv = float(v @ v)
    if vv < Constants.UNIT_DIRECTION_TOL**2:
        return np.eye(d), aligned
    reflection = np.eye(d) - 2.0 * np.outer(v, v) / vv
    return reflection, aligned
