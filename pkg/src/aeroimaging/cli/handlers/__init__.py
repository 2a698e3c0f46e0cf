"""CLI handlers for the subcommands."""

from aeroimaging.cli.handlers.psf import handle_psf
from aeroimaging.cli.handlers.reconstruct import DAMAS_SOLVERS, ReconstructHandler
from aeroimaging.cli.handlers.synth import SynthHandler
from aeroimaging.cli.handlers.verify import VerifyHandler

__all__ = [
    "DAMAS_SOLVERS",
    "ReconstructHandler",
    "SynthHandler",
    "VerifyHandler",
    "handle_psf",
]
