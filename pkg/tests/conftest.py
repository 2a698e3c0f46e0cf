"""Shared fixtures."""

from collections.abc import Iterator
from pathlib import Path

import pytest

from aeroimaging.array.geometry import FocusGrid, MicArray
from aeroimaging.array.operators import PropagationMatrix, propagation_matrix
from aeroimaging.physics.flow import FlowConfig
from aeroimaging.services.logger import Logger, get_logger


@pytest.fixture(autouse=True, scope="session")
def log_to_tmp(tmp_path_factory: pytest.TempPathFactory) -> Iterator[Path]:
    """Keep the rotating log file out of the home directory during tests."""
    log_dir = tmp_path_factory.mktemp("logs")
    Logger.LOG_DIR = log_dir
    get_logger().redirect(log_dir)
    yield log_dir


@pytest.fixture
def flow() -> FlowConfig:
    """3D wind-tunnel flow along x at 2 kHz."""
    return FlowConfig((0.15, 0.0, 0.0), sound_speed=343.0, frequency=2000.0)


@pytest.fixture
def array() -> MicArray:
    """3x3 lattice of microphones in the plane z = 0."""
    return MicArray.lattice(9, 1.0)


@pytest.fixture
def grid() -> FocusGrid:
    """3x3 planar focus grid at z = 1 with 0.25 m spacing."""
    return FocusGrid.regular((-0.25, -0.25, 1.0), (0.25, 0.25, 1.0), 0.25)


@pytest.fixture
def propagation(array: MicArray, grid: FocusGrid, flow: FlowConfig) -> PropagationMatrix:
    """Propagation matrix of the small lattice problem."""
    return propagation_matrix(array, grid, flow)
