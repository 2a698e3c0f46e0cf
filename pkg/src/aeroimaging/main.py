"""Main entry point for the CLI application."""

import argparse
import sys
import tomllib
from collections.abc import Sequence
from pathlib import Path

from rich.console import Console
from rich.markup import escape

from aeroimaging.cli.handlers import (
    DAMAS_SOLVERS,
    ReconstructHandler,
    SynthHandler,
    VerifyHandler,
    handle_psf,
)
from aeroimaging.config.constants import Constants
from aeroimaging.config.settings import ConfigError, Settings
from aeroimaging.errors import (
    AeroImagingError,
    DimensionError,
    DomainError,
    FormatError,
    GeometryError,
    GridIndexError,
)
from aeroimaging.recon.solvers import Penalty
from aeroimaging.services.logger import get_logger

USAGE_ERRORS = (ConfigError, GeometryError, DimensionError, DomainError, GridIndexError)
IO_ERRORS = (OSError, FormatError, tomllib.TOMLDecodeError)


def _add_scenario(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scenario",
        type=Path,
        default=None,
        help="Scenario TOML file (default: built-in 16-microphone scenario)",
    )
    parser.add_argument("--seed", type=int, default=None, help="Override run.seed")


def _add_map_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, required=True, help="Output map file")
    parser.add_argument(
        "--normalize",
        action="store_true",
        help=f"Also write <out>{Constants.NORMALIZED_SUFFIX} scaled to max 1",
    )
    parser.add_argument(
        "--threshold",
        type=float,
        default=Constants.DEFAULT_THRESHOLD,
        help="Visibility threshold of the normalised map (default: %(default)s)",
    )


def _add_solver(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, default=0.0, help="Regularisation weight")
    parser.add_argument(
        "--penalty",
        choices=[p.value for p in Penalty],
        default=Penalty.QUADRATIC.value,
        help="Regularisation penalty (default: %(default)s)",
    )
    parser.add_argument(
        "--max-iter",
        type=int,
        default=Constants.DEFAULT_MAX_ITER,
        help="Iteration limit (default: %(default)s)",
    )
    parser.add_argument(
        "--tol",
        type=float,
        default=Constants.DEFAULT_TOL,
        help="Relative stopping tolerance (default: %(default)s)",
    )


def _build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command.

    Returns:
        Configured parser.
    """
    parser = argparse.ArgumentParser(
        prog="aeroimaging",
        description="Aeroacoustic source-power imaging under uniform subsonic flow",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", help="Synthesise a CSM from the scenario's sources")
    _add_scenario(synth)
    synth.add_argument("--out", type=Path, required=True, help="Output CSM file")
    synth.add_argument(
        "--exact", action="store_true", help="Write the noise-free model CSM (no snapshots)"
    )
    synth.add_argument(
        "--sources",
        type=Path,
        default=None,
        help="Source-map file on the scenario grid to use instead of [[sources]]",
    )

    for name, text in (
        ("beamform", "Conventional beamforming"),
        ("damas", "DAMAS deconvolution"),
        ("cmf", "Covariance matrix fitting"),
    ):
        sub = commands.add_parser(name, help=text)
        _add_scenario(sub)
        sub.add_argument("--csm", type=Path, required=True, help="Input CSM file")
        _add_map_output(sub)
        if name != "beamform":
            _add_solver(sub)
        if name == "damas":
            sub.add_argument(
                "--solver",
                choices=DAMAS_SOLVERS,
                default=DAMAS_SOLVERS[0],
                help="DAMAS solver (default: %(default)s)",
            )

    psf = commands.add_parser("psf", help="Point-spread function of one focus point")
    _add_scenario(psf)
    psf.add_argument("--index", type=int, required=True, help="Focus point index (0-based)")
    _add_map_output(psf)

    verify = commands.add_parser("verify", help="Run the numerical verification suite")
    _add_scenario(verify)
    verify.add_argument(
        "--out",
        type=Path,
        default=Path(Constants.DEFAULT_REPORT_DIR),
        help="Report directory (default: %(default)s)",
    )
    return parser


def _dispatch(args: argparse.Namespace, console: Console, settings: Settings) -> int:
    command: str = args.command
    if command == "synth":
        return SynthHandler(console, settings).handle(args)
    if command == "verify":
        return VerifyHandler(console, settings).handle(args)
    if command == "psf":
        return handle_psf(console, args)
    recon = ReconstructHandler(console)
    if command == "beamform":
        return recon.run_beamform(args)
    if command == "damas":
        return recon.run_damas(args)
    return recon.run_cmf(args)


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point.

    Args:
        argv: Command-line arguments without the program name.

    Returns:
        Exit code: 0 success, 1 failed verification, 2 invalid input,
        3 I/O or parse failure, 4 solver did not converge.
    """
    logger = get_logger()
    console = Console()
    args = _build_parser().parse_args(argv)
    logger.info("Application started: command=%s", args.command)

    try:
        settings = Settings.load()
        return _dispatch(args, console, settings)
    except USAGE_ERRORS as e:
        logger.exception("Invalid input")
        console.print(f"[red]Error: {escape(str(e))}[/red]")
        return Constants.EXIT_USAGE
    except IO_ERRORS as e:
        logger.exception("I/O failure")
        console.print(f"[red]I/O error: {escape(str(e))}[/red]")
        return Constants.EXIT_IO
    except AeroImagingError as e:
        logger.exception("Unexpected library error")
        console.print(f"[red]Error: {escape(str(e))}[/red]")
        return Constants.EXIT_USAGE
    except KeyboardInterrupt:
        console.print(f"\n[yellow]{Constants.MSG_CANCELLED}[/yellow]")
        return Constants.EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
