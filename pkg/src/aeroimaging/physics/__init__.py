"""Convected Helmholtz physics: flow geometry, Green's functions, far field."""

from aeroimaging.physics.farfield import (
    far_field_pattern,
    far_field_wavevector,
    farfield_leading,
    plane_wave,
)
from aeroimaging.physics.flow import FlowConfig, aligned_frame, mach_norm, mach_unit
from aeroimaging.physics.greens import (
    free_field_greens,
    greens,
    greens_2d,
    greens_3d,
    lorentz_reference,
)
from aeroimaging.physics.hankel import hankel_h1_0

__all__ = [
    "FlowConfig",
    "aligned_frame",
    "far_field_pattern",
    "far_field_wavevector",
    "farfield_leading",
    "free_field_greens",
    "greens",
    "greens_2d",
    "greens_3d",
    "hankel_h1_0",
    "lorentz_reference",
    "mach_norm",
    "mach_unit",
    "plane_wave",
]
