"""Synthetic measurements: random sources, snapshots, CSM estimation."""

from aeroimaging.synth.snapshots import (
    SnapshotEnsemble,
    add_noise,
    estimate_csm,
    sample_amplitudes,
    simulate_ensemble,
    simulate_snapshot,
)

__all__ = [
    "SnapshotEnsemble",
    "add_noise",
    "estimate_csm",
    "sample_amplitudes",
    "simulate_ensemble",
    "simulate_snapshot",
]
