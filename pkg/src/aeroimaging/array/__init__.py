"""Array model: geometry, forward operator and adjoint."""

from aeroimaging.array.geometry import FocusGrid, MicArray, check_disjoint
from aeroimaging.array.operators import (
    Csm,
    PropagationMatrix,
    SourceMap,
    adjoint_csm,
    forward_csm,
    monopole_matrix,
    propagation_matrix,
    steering_matrix,
    steering_vector,
    vec_linearization,
)

__all__ = [
    "Csm",
    "FocusGrid",
    "MicArray",
    "PropagationMatrix",
    "SourceMap",
    "adjoint_csm",
    "check_disjoint",
    "forward_csm",
    "monopole_matrix",
    "propagation_matrix",
    "steering_matrix",
    "steering_vector",
    "vec_linearization",
]
