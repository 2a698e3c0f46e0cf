"""Plain-text source-map files.

Raw maps::

    # source-map v1
    # N 25
    # dimension 3
    # signed 1
    0 <x> <y> <z> <q>
    ...

Normalised maps add ``# threshold`` and ``# peak`` headers and a trailing
visibility column (1 if the normalised value reaches the threshold).
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from aeroimaging.array.geometry import FocusGrid
from aeroimaging.array.operators import SourceMap
from aeroimaging.config.constants import Constants
from aeroimaging.errors import AeroImagingError, FormatError
from aeroimaging.recon.beamforming import NormalizedMap


@dataclass(frozen=True, eq=False)
class MapData:
    """Contents of a source-map file."""

    points: NDArray[np.float64]
    values: NDArray[np.float64]
    signed: bool = False
    visible: NDArray[np.bool_] | None = None
    threshold: float | None = None
    peak: float | None = None

    @property
    def size(self) -> int:
        """Number of focus points."""
        return int(self.values.shape[0])

    def to_source_map(self, grid: FocusGrid) -> SourceMap:
        """Attach the values to ``grid``.

        Raises:
            FormatError: If the file's points are not the grid's points.
        """
        if self.points.shape != grid.points.shape or not np.array_equal(self.points, grid.points):
            raise FormatError("Map points do not match the focus grid")
        try:
            return SourceMap(self.values, grid, signed=self.signed)
        except AeroImagingError as e:
            raise FormatError(str(e)) from e


def _number(value: float) -> str:
    return format(float(value), ".17g")


def _point_lines(
    points: NDArray[np.float64], columns: list[NDArray[np.float64] | NDArray[np.int_]]
) -> list[str]:
    lines = []
    for n, point in enumerate(points):
        coords = " ".join(_number(c) for c in point)
        extra = " ".join(
            str(int(col[n])) if col.dtype.kind in "iub" else _number(col[n]) for col in columns
        )
        lines.append(f"{n} {coords} {extra}")
    return lines


def format_map(source_map: SourceMap) -> str:
    """Render a raw source map."""
    grid = source_map.grid
    header = [
        Constants.MAP_MAGIC,
        f"# N {grid.size}",
        f"# dimension {grid.dimension}",
        f"# signed {int(source_map.signed)}",
    ]
    body = _point_lines(grid.points, [source_map.values])
    return "\n".join(header + body) + "\n"


def format_normalized_map(normalized: NormalizedMap, grid: FocusGrid) -> str:
    """Render a normalised map with its visibility column."""
    header = [
        Constants.MAP_MAGIC,
        f"# N {grid.size}",
        f"# dimension {grid.dimension}",
        "# signed 0",
        f"# threshold {normalized.threshold!r}",
        f"# peak {normalized.peak!r}",
    ]
    body = _point_lines(grid.points, [normalized.values, normalized.visible.astype(np.int_)])
    return "\n".join(header + body) + "\n"


def write_map(path: Path, source_map: SourceMap) -> None:
    """Write a raw source map, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_map(source_map), encoding="utf-8")


def normalized_path(path: Path) -> Path:
    """``out.txt`` -> ``out.normalized.txt``."""
    return path.with_name(path.stem + Constants.NORMALIZED_SUFFIX)


def write_normalized_map(path: Path, normalized: NormalizedMap, grid: FocusGrid) -> None:
    """Write a normalised map, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_normalized_map(normalized, grid), encoding="utf-8")


def parse_map(text: str, path: Path) -> MapData:
    """Parse a raw or normalised map; ``path`` is only used in error messages.

    Raises:
        FormatError: On a bad header or malformed rows.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != Constants.MAP_MAGIC:
        raise FormatError(f"{path}: not a source-map file (expected {Constants.MAP_MAGIC!r})")

    headers: dict[str, str] = {}
    body_start = 1
    for line in lines[1:]:
        if not line.startswith("#"):
            break
        parts = line[1:].split()
        if len(parts) != 2:
            raise FormatError(f"{path}:{body_start + 1}: malformed header {line!r}")
        headers[parts[0]] = parts[1]
        body_start += 1

    try:
        n = int(headers["N"])
        d = int(headers["dimension"])
        signed = headers.get("signed", "0") == "1"
        threshold = float(headers["threshold"]) if "threshold" in headers else None
        peak = float(headers["peak"]) if "peak" in headers else None
    except KeyError as e:
        raise FormatError(f"{path}: missing header {e}") from e
    except ValueError as e:
        raise FormatError(f"{path}: invalid header value: {e}") from e

    width = 1 + d + 1 + (1 if threshold is not None else 0)
    rows = [(number, line) for number, line in enumerate(lines, start=1) if number > body_start]
    rows = [(number, line) for number, line in rows if line.strip()]
    if len(rows) != n:
        raise FormatError(f"{path}: expected {n} rows, found {len(rows)}")

    points = np.zeros((n, d))
    values = np.zeros(n)
    visible = np.zeros(n, dtype=bool)
    for expected, (number, line) in enumerate(rows):
        parts = line.split()
        if len(parts) != width:
            raise FormatError(f"{path}:{number}: expected {width} columns, got {len(parts)}")
        try:
            index = int(parts[0])
            points[expected] = [float(c) for c in parts[1 : 1 + d]]
            values[expected] = float(parts[1 + d])
            if threshold is not None:
                visible[expected] = int(parts[2 + d]) == 1
        except ValueError as e:
            raise FormatError(f"{path}:{number}: {e}") from e
        if index != expected:
            raise FormatError(f"{path}:{number}: expected index {expected}, got {index}")

    return MapData(
        points=points,
        values=values,
        signed=signed,
        visible=visible if threshold is not None else None,
        threshold=threshold,
        peak=peak,
    )


def read_map(path: Path) -> MapData:
    """Read a map file.

    Raises:
        FileNotFoundError: If ``path`` does not exist.
        FormatError: If the contents cannot be parsed.
    """
    return parse_map(path.read_text(encoding="utf-8"), path)
