"""Scenario files: flow, geometry, true sources and run parameters.

Scenarios are TOML documents with the sections ``[flow]``, ``[array]``,
``[grid]``, ``[[sources]]``, ``[run]`` and ``[verify]``. A file only needs the
keys it changes; everything else comes from :meth:`Scenario.default`.
"""

import tomllib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import tomli_w

from aeroimaging.array.geometry import FocusGrid, MicArray, check_disjoint
from aeroimaging.array.operators import SourceMap
from aeroimaging.config.constants import Constants
from aeroimaging.config.settings import ConfigError
from aeroimaging.errors import AeroImagingError, FormatError
from aeroimaging.physics.flow import FlowConfig
from aeroimaging.utils.json_utils import JsonUtils

ARRAY_KINDS = ("spiral", "lattice", "explicit")


@dataclass(frozen=True)
class ArraySpec:
    """Microphone array definition: a generator or explicit positions."""

    kind: str = "spiral"
    count: int = Constants.DEFAULT_MIC_COUNT
    aperture: float = Constants.DEFAULT_APERTURE
    center: tuple[float, ...] = (0.0, 0.0, 0.0)
    positions: tuple[tuple[float, ...], ...] = ()


@dataclass(frozen=True)
class GridSpec:
    """Regular focus grid: corner points and spacing."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    spacing: float


@dataclass(frozen=True)
class SourceSpec:
    """One true source: a power at a grid index or at the grid point nearest a position."""

    power: float
    index: int | None = None
    position: tuple[float, ...] | None = None


@dataclass(frozen=True)
class RunSpec:
    """Synthesis parameters."""

    seed: int = Constants.DEFAULT_SEED
    snapshots: int = Constants.DEFAULT_SNAPSHOTS
    noise: float = 0.0


@dataclass(frozen=True)
class Scenario:
    """A complete imaging scenario."""

    flow: FlowConfig
    array: ArraySpec
    grid: GridSpec
    sources: tuple[SourceSpec, ...]
    run: RunSpec = RunSpec()
    tolerances: dict[str, float] = field(default_factory=dict)

    @classmethod
    def default(cls) -> "Scenario":
        """Built-in 3D scenario: 16-microphone spiral, 5x5 grid at 1 m, two sources."""
        half = Constants.DEFAULT_GRID_HALF_WIDTH
        z = Constants.DEFAULT_FOCUS_DISTANCE
        return cls(
            flow=FlowConfig((Constants.DEFAULT_MACH, 0.0, 0.0)),
            array=ArraySpec(),
            grid=GridSpec((-half, -half, z), (half, half, z), Constants.DEFAULT_GRID_SPACING),
            sources=(SourceSpec(power=1.0, index=6), SourceSpec(power=0.5, index=18)),
        )

    @classmethod
    def load(cls, path: Path) -> "Scenario":
        """Load a scenario file merged over the default scenario.

        Args:
            path: TOML scenario file.

        Returns:
            Validated scenario.

        Raises:
            FileNotFoundError: If the file does not exist.
            FormatError: If the file is not valid TOML.
            ConfigError: If values are missing, malformed or geometrically invalid.
        """
        if not path.exists():
            raise FileNotFoundError(Constants.ERROR_SCENARIO_NOT_FOUND.format(path=path))
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise FormatError(f"Invalid TOML in {path}: {e}") from e

        merged = JsonUtils.deep_merge(cls.default().to_dict(), data)
        return cls.from_dict(merged)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Scenario":
        """Build and validate a scenario from its dictionary form.

        Raises:
            ConfigError: If values are missing, malformed or geometrically invalid.
        """
        try:
            scenario = cls(
                flow=cls._load_flow(data["flow"]),
                array=cls._load_array(data["array"]),
                grid=cls._load_grid(data["grid"]),
                sources=tuple(cls._load_source(s) for s in data.get("sources", [])),
                run=cls._load_run(data.get("run", {})),
                tolerances={
                    str(k): float(v)
                    for k, v in data.get("verify", {}).get("tolerances", {}).items()
                },
            )
        except KeyError as e:
            raise ConfigError(f"Scenario is missing required key {e}") from e
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid scenario value: {e}") from e
        except AeroImagingError as e:
            raise ConfigError(str(e)) from e
        scenario.validate()
        return scenario

    @staticmethod
    def _load_flow(data: dict[str, Any]) -> FlowConfig:
        return FlowConfig(
            mach=tuple(float(c) for c in data["mach"]),
            sound_speed=float(data.get("sound_speed", Constants.DEFAULT_SOUND_SPEED)),
            frequency=float(data.get("frequency", Constants.DEFAULT_FREQUENCY)),
        )

    @staticmethod
    def _load_array(data: dict[str, Any]) -> ArraySpec:
        kind = str(data.get("kind", "spiral"))
        if kind not in ARRAY_KINDS:
            raise ConfigError(f"Unknown array kind {kind!r}; expected one of {ARRAY_KINDS}")
        return ArraySpec(
            kind=kind,
            count=int(data.get("count", Constants.DEFAULT_MIC_COUNT)),
            aperture=float(data.get("aperture", Constants.DEFAULT_APERTURE)),
            center=tuple(float(c) for c in data.get("center", ())),
            positions=tuple(tuple(float(c) for c in p) for p in data.get("positions", [])),
        )

    @staticmethod
    def _load_grid(data: dict[str, Any]) -> GridSpec:
        return GridSpec(
            lower=tuple(float(c) for c in data["lower"]),
            upper=tuple(float(c) for c in data["upper"]),
            spacing=float(data["spacing"]),
        )

    @staticmethod
    def _load_source(data: dict[str, Any]) -> SourceSpec:
        index = data.get("index")
        position = data.get("position")
        if (index is None) == (position is None):
            raise ConfigError("Each source needs exactly one of 'index' or 'position'")
        return SourceSpec(
            power=float(data["power"]),
            index=int(index) if index is not None else None,
            position=tuple(float(c) for c in position) if position is not None else None,
        )

    @staticmethod
    def _load_run(data: dict[str, Any]) -> RunSpec:
        return RunSpec(
            seed=int(data.get("seed", Constants.DEFAULT_SEED)),
            snapshots=int(data.get("snapshots", Constants.DEFAULT_SNAPSHOTS)),
            noise=float(data.get("noise", 0.0)),
        )

    def validate(self) -> None:
        """Check dimensions, run parameters and geometric disjointness.

        Raises:
            ConfigError: If the scenario cannot be used.
        """
        d = self.flow.dimension
        if len(self.grid.lower) != d or len(self.grid.upper) != d:
            raise ConfigError(f"Grid corners must have {d} coordinates for a {d}D flow")
        if self.array.kind != "explicit" and len(self.array.center) != d:
            raise ConfigError(f"Array centre must have {d} coordinates for a {d}D flow")
        if self.run.snapshots < 1:
            raise ConfigError(f"run.snapshots must be at least 1, got {self.run.snapshots}")
        if self.run.seed < 0:
            raise ConfigError(f"run.seed must be non-negative, got {self.run.seed}")
        if self.run.noise < 0.0:
            raise ConfigError(f"run.noise must be non-negative, got {self.run.noise}")
        try:
            array = self.build_array()
            grid = self.build_grid()
            check_disjoint(array, grid)
            self.build_sources(grid)
        except AeroImagingError as e:
            raise ConfigError(str(e)) from e

    def build_flow(self) -> FlowConfig:
        """The scenario's flow configuration."""
        return self.flow

    def build_array(self) -> MicArray:
        """Instantiate the microphone array."""
        spec = self.array
        d = self.flow.dimension
        if spec.kind == "explicit":
            if not spec.positions:
                raise ConfigError("An explicit array needs at least one position")
            return MicArray.explicit(spec.positions)
        if spec.kind == "lattice":
            return MicArray.lattice(spec.count, spec.aperture, d, spec.center)
        return MicArray.spiral(spec.count, spec.aperture, d, spec.center)

    def build_grid(self) -> FocusGrid:
        """Instantiate the focus grid."""
        return FocusGrid.regular(self.grid.lower, self.grid.upper, self.grid.spacing)

    def build_sources(self, grid: FocusGrid | None = None) -> SourceMap:
        """True source map; positions snap to the nearest grid point."""
        if grid is None:
            grid = self.build_grid()
        powers: dict[int, float] = {}
        for source in self.sources:
            if source.index is not None:
                index = grid.check_index(source.index)
            else:
                assert source.position is not None
                index = grid.nearest_index(source.position)
            powers[index] = powers.get(index, 0.0) + source.power
        return SourceMap.point_sources(grid, powers)

    def tolerance(self, name: str, default: float) -> float:
        """Verify threshold for check ``name``, honouring ``[verify]`` overrides."""
        return self.tolerances.get(name, default)

    def to_dict(self) -> dict[str, Any]:
        """Dictionary form matching the TOML layout (no ``None`` values)."""
        array: dict[str, Any] = {
            "kind": self.array.kind,
            "count": self.array.count,
            "aperture": self.array.aperture,
            "center": list(self.array.center),
            "positions": [list(p) for p in self.array.positions],
        }
        sources: list[dict[str, Any]] = []
        for s in self.sources:
            entry: dict[str, Any] = {"power": s.power}
            if s.index is not None:
                entry["index"] = s.index
            if s.position is not None:
                entry["position"] = list(s.position)
            sources.append(entry)
        return {
            "flow": {
                "mach": list(self.flow.mach),
                "sound_speed": self.flow.sound_speed,
                "frequency": self.flow.frequency,
            },
            "array": array,
            "grid": {
                "lower": list(self.grid.lower),
                "upper": list(self.grid.upper),
                "spacing": self.grid.spacing,
            },
            "sources": sources,
            "run": {
                "seed": self.run.seed,
                "snapshots": self.run.snapshots,
                "noise": self.run.noise,
            },
            "verify": {"tolerances": dict(sorted(self.tolerances.items()))},
        }

    def save(self, path: Path) -> None:
        """Write the scenario as TOML (floats keep full precision)."""
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as f:
            tomli_w.dump(self.to_dict(), f)
