"""Shared helpers for the command handlers."""

import argparse
from dataclasses import replace
from pathlib import Path

import numpy as np

from aeroimaging.array.operators import Csm
from aeroimaging.config.scenario import Scenario
from aeroimaging.recon.solvers import Penalty, ReconConfig


def load_scenario(args: argparse.Namespace) -> Scenario:
    """Scenario from ``--scenario`` (or the built-in default) with ``--seed`` applied.

    Raises:
        FileNotFoundError: If the scenario file does not exist.
        FormatError: If it is not valid TOML.
        ConfigError: If it is not a usable scenario.
    """
    path: Path | None = args.scenario
    scenario = Scenario.default() if path is None else Scenario.load(path)
    seed: int | None = getattr(args, "seed", None)
    if seed is not None:
        scenario = replace(scenario, run=replace(scenario.run, seed=seed))
        scenario.validate()
    return scenario


def scenario_label(args: argparse.Namespace) -> str:
    """How the scenario is named in messages and reports."""
    path: Path | None = args.scenario
    return "<default>" if path is None else path.name


def recon_config(args: argparse.Namespace) -> ReconConfig:
    """Solver parameters from ``--alpha``, ``--penalty``, ``--max-iter`` and ``--tol``."""
    return ReconConfig(
        alpha=args.alpha,
        penalty=Penalty(args.penalty),
        max_iter=args.max_iter,
        tol=args.tol,
    )


def condition_summary(csm: Csm) -> dict[str, float]:
    """Eigenvalue range and spectral condition number of a CSM."""
    eig = np.linalg.eigvalsh(csm.entries)
    largest = float(eig[-1])
    smallest = float(max(eig[0], 0.0))
    condition = largest / smallest if smallest > 0.0 else float("inf")
    return {"eig_max": largest, "eig_min": smallest, "condition": condition}
