"""Microphone arrays and focus grids."""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial.distance import pdist

from aeroimaging.config.constants import Constants
from aeroimaging.errors import DimensionError, GeometryError, GridIndexError

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def _frozen_points(points: ArrayLike, what: str) -> NDArray[np.float64]:
    """Validate an (n, d) point cloud and return a read-only copy."""
    arr = np.array(points, dtype=np.float64, copy=True)
    if arr.ndim != 2 or arr.shape[1] not in (2, 3):
        raise DimensionError(f"{what} must be an (n, 2) or (n, 3) array, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise GeometryError(f"{what} must contain at least one point")
    if not np.all(np.isfinite(arr)):
        raise GeometryError(f"{what} must be finite")
    if arr.shape[0] > 1 and pdist(arr).min() <= Constants.GEOMETRY_TOL:
        raise GeometryError(f"{what} must be pairwise distinct")
    arr.setflags(write=False)
    return arr


def _plane_center(center: Sequence[float] | None, dimension: int) -> NDArray[np.float64]:
    if center is None:
        return np.zeros(dimension)
    c = np.asarray(center, dtype=np.float64)
    if c.shape != (dimension,):
        raise DimensionError(f"Array centre must have {dimension} coordinates, got {c.shape}")
    return c


def factor_pair(count: int) -> tuple[int, int]:
    """Most square factorisation ``rows * cols = count`` with ``rows >= cols``."""
    cols = max(c for c in range(1, math.isqrt(count) + 1) if count % c == 0)
    return count // cols, cols


@dataclass(frozen=True, eq=False)
class MicArray:
    """Microphone positions x_1..x_M in the measurement region."""

    positions: NDArray[np.float64]

    def __post_init__(self) -> None:
        """Validate and freeze the position array."""
        object.__setattr__(self, "positions", _frozen_points(self.positions, "Microphone array"))

    @classmethod
    def explicit(cls, positions: ArrayLike) -> "MicArray":
        """Array from an explicit list of positions."""
        return cls(np.asarray(positions, dtype=np.float64))

    @classmethod
    def spiral(
        cls,
        count: int,
        aperture: float,
        dimension: int = 3,
        center: Sequence[float] | None = None,
    ) -> "MicArray":
        """Planar Fermat (sunflower) spiral.

        In 3D the spiral lies in the plane z = center_z. In 2D the array is a
        uniform line along the first axis spanning the aperture.

        Args:
            count: Number of microphones (>= 1).
            aperture: Array diameter in metres (> 0).
            dimension: 2 or 3.
            center: Array centre; the origin by default.
        """
        if count < 1 or aperture <= 0:
            raise GeometryError("Spiral array needs count >= 1 and a positive aperture")
        origin = _plane_center(center, dimension)
        j = np.arange(count, dtype=np.float64)
        if dimension == 2:
            offsets = np.zeros((count, 2))
            if count > 1:
                offsets[:, 0] = aperture * (j / (count - 1) - 0.5)
            return cls(origin + offsets)

        radius = 0.5 * aperture * np.sqrt((j + 0.5) / count)
        angle = j * GOLDEN_ANGLE
        offsets = np.column_stack([radius * np.cos(angle), radius * np.sin(angle), np.zeros(count)])
        return cls(origin + offsets)

    @classmethod
    def lattice(
        cls,
        count: int,
        aperture: float,
        dimension: int = 3,
        center: Sequence[float] | None = None,
    ) -> "MicArray":
        """Rectangular lattice of ``count`` microphones spanning ``aperture``.

        In 3D the lattice uses the most square ``rows x cols`` factorisation of
        ``count`` in the plane z = center_z; in 2D it is a line along the first axis.
        """
        if count < 1 or aperture <= 0:
            raise GeometryError("Lattice array needs count >= 1 and a positive aperture")
        if dimension == 2:
            return cls.spiral(count, aperture, dimension=2, center=center)
        origin = _plane_center(center, dimension)
        rows, cols = factor_pair(count)

        def axis(n: int) -> NDArray[np.float64]:
            return np.zeros(1) if n == 1 else aperture * (np.arange(n) / (n - 1) - 0.5)

        xs, ys = np.meshgrid(axis(rows), axis(cols), indexing="ij")
        offsets = np.column_stack([xs.ravel(), ys.ravel(), np.zeros(count)])
        return cls(origin + offsets)

    @property
    def size(self) -> int:
        """Number of microphones M."""
        return int(self.positions.shape[0])

    @property
    def dimension(self) -> int:
        """Spatial dimension d."""
        return int(self.positions.shape[1])


@dataclass(frozen=True, eq=False)
class FocusGrid:
    """Focus points y_1..y_N with the measures |Omega_n| of their cells.

    ``lower``/``upper`` bound the source region Omega (the union of the cells).
    ``shape`` is set for regular lattices (first axis varies slowest).
    """

    points: NDArray[np.float64]
    cell_measures: NDArray[np.float64]
    lower: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    upper: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    shape: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        """Validate points and measures; default the bounding box to the point hull."""
        points = _frozen_points(self.points, "Focus grid")
        measures = np.array(self.cell_measures, dtype=np.float64, copy=True)
        if measures.shape != (points.shape[0],):
            raise DimensionError(
                f"Expected {points.shape[0]} cell measures, got shape {measures.shape}"
            )
        if not np.all(np.isfinite(measures)) or np.any(measures <= 0.0):
            raise GeometryError("Cell measures must be positive and finite")
        measures.setflags(write=False)

        lower = np.asarray(self.lower, dtype=np.float64)
        upper = np.asarray(self.upper, dtype=np.float64)
        if lower.size == 0:
            lower = points.min(axis=0)
        if upper.size == 0:
            upper = points.max(axis=0)
        if lower.shape != (points.shape[1],) or upper.shape != (points.shape[1],):
            raise DimensionError("Grid bounding box must match the point dimension")

        object.__setattr__(self, "points", points)
        object.__setattr__(self, "cell_measures", measures)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def regular(
        cls,
        lower: Sequence[float],
        upper: Sequence[float],
        spacing: float | Sequence[float],
    ) -> "FocusGrid":
        """Axis-aligned lattice with cells of side ``spacing`` centred on the points.

        An axis with ``lower == upper`` holds a single layer and contributes no
        factor to the cell measure, so a planar grid in 3D has area cells.

        Args:
            lower: Lowest grid coordinate per axis.
            upper: Highest grid coordinate per axis.
            spacing: Point spacing, scalar or per axis.
        """
        lo = np.asarray(lower, dtype=np.float64)
        hi = np.asarray(upper, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise DimensionError("Grid corners must be vectors of equal length")
        steps = np.broadcast_to(np.asarray(spacing, dtype=np.float64), lo.shape)
        if np.any(hi < lo):
            raise GeometryError("Grid upper corner must not lie below the lower corner")

        axes: list[NDArray[np.float64]] = []
        measure = 1.0
        box_lo = lo.copy()
        box_hi = hi.copy()
        for i, (a, b, h) in enumerate(zip(lo, hi, steps, strict=True)):
            if b == a:
                axes.append(np.array([a]))
                continue
            if not h > 0:
                raise GeometryError(f"Grid spacing along axis {i} must be positive")
            n = int(math.floor((b - a) / h + 1e-9)) + 1
            axes.append(a + h * np.arange(n))
            measure *= float(h)
            box_lo[i] = a - 0.5 * h
            box_hi[i] = a + h * (n - 1) + 0.5 * h

        mesh = np.meshgrid(*axes, indexing="ij")
        points = np.column_stack([c.ravel() for c in mesh])
        shape = tuple(len(a) for a in axes)
        return cls(points, np.full(points.shape[0], measure), box_lo, box_hi, shape)

    @property
    def size(self) -> int:
        """Number of focus points N."""
        return int(self.points.shape[0])

    @property
    def dimension(self) -> int:
        """Spatial dimension d."""
        return int(self.points.shape[1])

    def check_index(self, index: int) -> int:
        """Return ``index`` if it addresses a focus point.

        Raises:
            GridIndexError: If the index is out of range.
        """
        if not 0 <= index < self.size:
            raise GridIndexError(Constants.ERROR_INDEX_RANGE.format(index=index, count=self.size))
        return index

    def nearest_index(self, point: Sequence[float]) -> int:
        """Index of the focus point closest (Euclidean) to ``point``."""
        p = np.asarray(point, dtype=np.float64)
        if p.shape != (self.dimension,):
            raise DimensionError(f"Expected a {self.dimension}D point, got shape {p.shape}")
        return int(np.argmin(np.sum((self.points - p) ** 2, axis=1)))


def check_disjoint(array: MicArray, grid: FocusGrid) -> None:
    """Ensure no microphone lies in the closed bounding box of the source region.

    Raises:
        DimensionError: If array and grid dimensions differ.
        GeometryError: If a microphone lies inside the box.
    """
    if array.dimension != grid.dimension:
        raise DimensionError(
            f"Array is {array.dimension}D but the focus grid is {grid.dimension}D"
        )
    tol = Constants.GEOMETRY_TOL
    inside = np.all(
        (array.positions >= grid.lower - tol) & (array.positions <= grid.upper + tol), axis=1
    )
    if np.any(inside):
        first = int(np.flatnonzero(inside)[0])
        raise GeometryError(
            f"Microphone {first} at {array.positions[first].tolist()} lies inside the "
            "source region"
        )
