"""Handler for the ``synth`` command."""

import argparse
from pathlib import Path

from rich.console import Console

from aeroimaging.array.geometry import FocusGrid
from aeroimaging.array.operators import Csm, SourceMap, forward_csm, propagation_matrix
from aeroimaging.cli.utils import condition_summary, load_scenario, scenario_label
from aeroimaging.config.constants import Constants
from aeroimaging.config.settings import Settings
from aeroimaging.formats.csm_file import write_csm
from aeroimaging.formats.map_file import read_map
from aeroimaging.services.logger import get_logger
from aeroimaging.synth.snapshots import add_noise, estimate_csm, simulate_ensemble


class SynthHandler:
    """Synthesises a CSM from the scenario's sources or from a source-map file."""

    def __init__(self, console: Console, settings: Settings) -> None:
        """Initialize handler.

        Args:
            console: Rich console for output.
            settings: Runtime settings (worker threads).
        """
        self._console = console
        self._settings = settings
        self._log = get_logger().child("cli.synth")

    def handle(self, args: argparse.Namespace) -> int:
        """Write the CSM file named by ``--out``.

        With ``--exact`` the noise-free forward model is written (snapshot
        count 0); otherwise snapshots are simulated and averaged. With
        ``--sources`` the powers come from a map file on the scenario grid
        instead of the scenario's source list.
        """
        scenario = load_scenario(args)
        flow = scenario.build_flow()
        grid = scenario.build_grid()
        g = propagation_matrix(scenario.build_array(), grid, flow)
        q = _map_sources(args.sources, grid) if args.sources else scenario.build_sources(grid)

        if args.exact:
            csm: Csm = forward_csm(q, g)
        else:
            ensemble = simulate_ensemble(
                q,
                g,
                scenario.run.seed,
                scenario.run.snapshots,
                self._settings.workers,
                provenance=scenario_label(args),
            )
            csm = estimate_csm(ensemble)
        csm = add_noise(csm, scenario.run.noise)

        out: Path = args.out
        write_csm(out, csm)
        self._log.info(
            "synth: scenario=%s sources=%s seed=%d snapshots=%d exact=%s noise=%r",
            scenario_label(args),
            args.sources or "scenario",
            scenario.run.seed,
            csm.snapshots,
            args.exact,
            scenario.run.noise,
        )
        get_logger().log_context("synth csm", condition_summary(csm))
        msg = Constants.MSG_CSM_WRITTEN.format(m=csm.size, snapshots=csm.snapshots, path=out)
        self._console.print(f"[green]{msg}[/green]")
        return Constants.EXIT_OK


def _map_sources(path: Path, grid: FocusGrid) -> SourceMap:
    """Source powers from a map file; a signed map is rejected by the forward model."""
    return read_map(path).to_source_map(grid)
