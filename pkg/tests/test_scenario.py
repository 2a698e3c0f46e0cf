"""Tests for scenario files."""

from dataclasses import replace
from pathlib import Path

import pytest

from aeroimaging.config.scenario import ArraySpec, Scenario
from aeroimaging.config.settings import ConfigError
from aeroimaging.errors import FormatError


class TestDefaultScenario:
    """Tests for the built-in scenario."""

    def test_default_geometry(self) -> None:
        """Test the 16-microphone spiral, 5x5 grid and two sources."""
        scenario = Scenario.default()
        array = scenario.build_array()
        grid = scenario.build_grid()
        sources = scenario.build_sources(grid)

        assert array.size == 16
        assert grid.size == 25
        assert scenario.flow.mach == (0.15, 0.0, 0.0)
        assert sources.values[6] == 1.0
        assert sources.values[18] == 0.5
        assert sources.values.sum() == pytest.approx(1.5)

    def test_default_is_valid(self) -> None:
        """Test that the default scenario passes validation."""
        Scenario.default().validate()

    def test_tolerance_override(self) -> None:
        """Test that [verify] tolerances override defaults per check."""
        scenario = replace(Scenario.default(), tolerances={"hankel": 1e-3})

        assert scenario.tolerance("hankel", 1e-10) == 1e-3
        assert scenario.tolerance("adjoint", 1e-12) == 1e-12


class TestLoad:
    """Tests for Scenario.load."""

    def test_partial_file_merges_over_default(self, tmp_path: Path) -> None:
        """Test that a file only needs the keys it changes."""
        path = tmp_path / "scenario.toml"
        path.write_text("[run]\nseed = 7\nsnapshots = 64\n\n[flow]\nmach = [0.3, 0.0, 0.0]\n")

        scenario = Scenario.load(path)

        assert scenario.run.seed == 7
        assert scenario.run.snapshots == 64
        assert scenario.flow.mach == (0.3, 0.0, 0.0)
        assert scenario.flow.frequency == 8000.0
        assert scenario.build_grid().size == 25

    def test_sources_replace_default_list(self, tmp_path: Path) -> None:
        """Test that [[sources]] replaces the default sources instead of appending."""
        path = tmp_path / "scenario.toml"
        path.write_text("[[sources]]\npower = 2.0\nposition = [0.24, -0.26, 1.0]\n")

        sources = Scenario.load(path).build_sources()

        assert sources.values.sum() == pytest.approx(2.0)
        assert sources.values[3 * 5 + 1] == 2.0

    def test_round_trip(self, tmp_path: Path) -> None:
        """Test that save followed by load reproduces the scenario."""
        original = replace(
            Scenario.default(),
            array=ArraySpec(kind="lattice", count=12, aperture=0.8, center=(0.0, 0.0, -0.1)),
            tolerances={"gradient": 1e-4},
        )
        path = tmp_path / "saved" / "scenario.toml"

        original.save(path)
        loaded = Scenario.load(path)

        assert loaded == original

    def test_two_dimensional_scenario(self, tmp_path: Path) -> None:
        """Test a 2D scenario with a line array and a 2D grid."""
        path = tmp_path / "planar.toml"
        path.write_text(
            "[flow]\nmach = [0.2, 0.0]\n\n"
            "[array]\ncount = 8\ncenter = [0.0, 0.0]\n\n"
            "[grid]\nlower = [-0.5, 1.0]\nupper = [0.5, 1.0]\nspacing = 0.25\n\n"
            "[[sources]]\npower = 1.0\nindex = 2\n"
        )

        scenario = Scenario.load(path)

        assert scenario.build_array().dimension == 2
        assert scenario.build_grid().size == 5

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing scenario raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError, match="not found"):
            Scenario.load(tmp_path / "absent.toml")

    def test_invalid_toml(self, tmp_path: Path) -> None:
        """Test that TOML syntax errors raise FormatError."""
        path = tmp_path / "broken.toml"
        path.write_text("[flow\nmach = ")

        with pytest.raises(FormatError, match="Invalid TOML"):
            Scenario.load(path)

    @pytest.mark.parametrize(
        "text",
        [
            "[flow]\nmach = [1.2, 0.0, 0.0]\n",
            "[flow]\nmach = [0.1, 0.0]\n",
            "[array]\nkind = 'ring'\n",
            "[run]\nsnapshots = 0\n",
            "[run]\nnoise = -1.0\n",
            "[grid]\nlower = [-0.5, -0.5, 0.0]\nupper = [0.5, 0.5, 0.0]\n",
            "[[sources]]\npower = 1.0\nindex = 99\n",
            "[[sources]]\npower = 1.0\n",
            "[[sources]]\npower = 1.0\nindex = 0\nposition = [0.0, 0.0, 1.0]\n",
            "[flow]\nmach = 'fast'\n",
        ],
    )
    def test_invalid_values(self, tmp_path: Path, text: str) -> None:
        """Test that unusable scenarios raise ConfigError."""
        path = tmp_path / "bad.toml"
        path.write_text(text)

        with pytest.raises(ConfigError):
            Scenario.load(path)


def test_example_file_matches_default() -> None:
    """Test that the shipped example describes the built-in scenario."""
    example = Scenario.load(Path(__file__).parent.parent / "scenario_example.toml")
    default = Scenario.default()

    assert example.flow == default.flow
    assert example.array == default.array
    assert example.run == default.run
    assert list(example.build_sources().values) == list(default.build_sources().values)
