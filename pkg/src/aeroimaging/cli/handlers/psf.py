"""Handler for the ``psf`` command."""

import argparse
from pathlib import Path

from rich.console import Console

from aeroimaging.array.operators import SourceMap
from aeroimaging.cli.utils import load_scenario
from aeroimaging.config.constants import Constants
from aeroimaging.formats.map_file import normalized_path, write_map, write_normalized_map
from aeroimaging.recon.beamforming import normalize_map, psf_matrix
from aeroimaging.services.logger import get_logger


def handle_psf(console: Console, args: argparse.Namespace) -> int:
    """Write the point-spread function of focus point ``--index`` as a map.

    Args:
        console: Rich console for output.
        args: Parsed arguments (``--scenario``, ``--index``, ``--out``).

    Returns:
        Exit code.
    """
    scenario = load_scenario(args)
    grid = scenario.build_grid()
    psf = psf_matrix(scenario.build_array(), grid, scenario.build_flow())
    column = SourceMap(psf.column(args.index), grid)

    out: Path = args.out
    write_map(out, column)
    if args.normalize:
        write_normalized_map(normalized_path(out), normalize_map(column, args.threshold), grid)
    get_logger().child("cli.psf").info("psf: index=%d N=%d", args.index, grid.size)
    msg = Constants.MSG_PSF_WRITTEN.format(index=args.index, n=grid.size, path=out)
    console.print(f"[green]{msg}[/green]")
    return Constants.EXIT_OK
