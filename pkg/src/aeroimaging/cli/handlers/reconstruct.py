"""Handlers for the ``beamform``, ``damas`` and ``cmf`` commands."""

import argparse
from pathlib import Path

from rich.console import Console

from aeroimaging.array.operators import Csm, SourceMap, propagation_matrix
from aeroimaging.cli.utils import load_scenario, recon_config, scenario_label
from aeroimaging.config.constants import Constants
from aeroimaging.config.scenario import Scenario
from aeroimaging.errors import DimensionError
from aeroimaging.formats.csm_file import read_csm
from aeroimaging.formats.map_file import normalized_path, write_map, write_normalized_map
from aeroimaging.recon.beamforming import beamform, normalize_map, psf_matrix
from aeroimaging.recon.cmf import cmf_solve
from aeroimaging.recon.damas import damas_gauss_seidel, damas_tikhonov
from aeroimaging.recon.solvers import Reconstruction
from aeroimaging.services.logger import get_logger

DAMAS_SOLVERS = ("gauss-seidel", "tikhonov")


class ReconstructHandler:
    """Turns a CSM file into a source map with one of the three methods."""

    def __init__(self, console: Console) -> None:
        """Initialize handler.

        Args:
            console: Rich console for output.
        """
        self._console = console
        self._log = get_logger().child("cli.recon")

    def _inputs(self, args: argparse.Namespace) -> tuple[Scenario, Csm]:
        scenario = load_scenario(args)
        csm = read_csm(args.csm)
        array_size = scenario.build_array().size
        if csm.size != array_size:
            raise DimensionError(
                Constants.ERROR_CSM_MISMATCH.format(csm=csm.size, array=array_size)
            )
        if csm.frequency != scenario.flow.frequency:
            msg = Constants.MSG_FREQUENCY_MISMATCH.format(
                csm=csm.frequency, flow=scenario.flow.frequency
            )
            self._log.warning(msg)
            self._console.print(f"[yellow]{msg}[/yellow]")
        self._log.info(
            "%s: scenario=%s csm=%s (M=%d, snapshots=%d)",
            args.command,
            scenario_label(args),
            args.csm,
            csm.size,
            csm.snapshots,
        )
        return scenario, csm

    def _write(self, args: argparse.Namespace, method: str, source_map: SourceMap) -> None:
        out: Path = args.out
        write_map(out, source_map)
        msg = Constants.MSG_MAP_WRITTEN.format(method=method, n=source_map.size, path=out)
        self._console.print(f"[green]{msg}[/green]")
        if args.normalize:
            normalized = normalize_map(source_map, args.threshold)
            path = normalized_path(out)
            write_normalized_map(path, normalized, source_map.grid)
            self._console.print(f"[dim]Normalised map: {path}[/dim]")

    def _finish(self, args: argparse.Namespace, method: str, result: Reconstruction) -> int:
        self._write(args, method, result.source_map)
        diag = result.diagnostics
        self._log.info(
            "%s: status=%s iterations=%d final=%.6g",
            method,
            diag.status,
            diag.iterations,
            diag.final_value,
        )
        if not diag.status.converged:
            msg = Constants.MSG_SOLVER_FAILED.format(method=method, status=diag.status)
            self._console.print(f"[yellow]{msg}[/yellow]")
            return Constants.EXIT_SOLVER
        self._console.print(
            Constants.MSG_SOLVER_STATUS.format(
                method=method, status=diag.status, iterations=diag.iterations
            )
        )
        return Constants.EXIT_OK

    def run_beamform(self, args: argparse.Namespace) -> int:
        """Conventional beamforming; always succeeds once inputs are valid."""
        scenario, csm = self._inputs(args)
        source_map = beamform(
            csm, scenario.build_array(), scenario.build_grid(), scenario.build_flow()
        )
        self._write(args, "CBF", source_map)
        return Constants.EXIT_OK

    def run_damas(self, args: argparse.Namespace) -> int:
        """DAMAS deconvolution of the beamformer map (Gauss-Seidel or regularised)."""
        scenario, csm = self._inputs(args)
        array = scenario.build_array()
        grid = scenario.build_grid()
        flow = scenario.build_flow()
        cfg = recon_config(args)
        beam = beamform(csm, array, grid, flow)
        psf = psf_matrix(array, grid, flow)
        if args.solver == "tikhonov":
            return self._finish(args, "DAMAS-Tikhonov", damas_tikhonov(beam, psf, cfg))
        return self._finish(args, "DAMAS", damas_gauss_seidel(beam, psf, cfg))

    def run_cmf(self, args: argparse.Namespace) -> int:
        """Covariance matrix fitting against the full CSM."""
        scenario, csm = self._inputs(args)
        g = propagation_matrix(
            scenario.build_array(), scenario.build_grid(), scenario.build_flow()
        )
        return self._finish(args, "CMF", cmf_solve(csm, g, recon_config(args)))
