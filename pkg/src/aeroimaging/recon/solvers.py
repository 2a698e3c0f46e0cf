"""Solver configuration, diagnostics and the projected-gradient engine."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray

from aeroimaging.array.operators import SourceMap
from aeroimaging.config.constants import Constants
from aeroimaging.errors import DomainError, SolverError

logger = logging.getLogger(__name__)

Vector = NDArray[np.float64]


class Penalty(StrEnum):
    """Regularisation functional R(q)."""

    QUADRATIC = "l2"
    L1 = "l1"


class SolverStatus(StrEnum):
    """Outcome of an iterative solve."""

    CONVERGED = "converged"
    STAGNANT = "converged-stagnant"
    MAX_ITER = "max-iter"
    DIVERGED = "diverged"

    @property
    def converged(self) -> bool:
        """True for both converged states."""
        return self in (SolverStatus.CONVERGED, SolverStatus.STAGNANT)


@dataclass(frozen=True)
class ReconConfig:
    """Regularisation and stopping parameters shared by all iterative solvers."""

    alpha: float = 0.0
    penalty: Penalty = Penalty.QUADRATIC
    max_iter: int = Constants.DEFAULT_MAX_ITER
    tol: float = Constants.DEFAULT_TOL
    nonneg: bool = True

    def __post_init__(self) -> None:
        """Validate ranges."""
        if not (math.isfinite(self.alpha) and self.alpha >= 0.0):
            raise DomainError(f"alpha must be non-negative, got {self.alpha}")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.penalty is Penalty.L1 and not self.nonneg:
            raise DomainError("The l1 penalty is only available with non-negativity")

    def penalty_value(self, q: Vector) -> float:
        """alpha * R(q); the l1 norm reduces to a sum under q >= 0."""
        if self.alpha == 0.0:
            return 0.0
        if self.penalty is Penalty.L1:
            return self.alpha * float(np.sum(q))
        return self.alpha * float(q @ q)

    def penalty_gradient(self, q: Vector) -> Vector:
        """Gradient of :meth:`penalty_value`."""
        if self.penalty is Penalty.L1:
            return np.full_like(q, self.alpha)
        result: Vector = 2.0 * self.alpha * q
        return result

    def project(self, q: Vector) -> Vector:
        """Projection onto the feasible set."""
        return np.maximum(q, 0.0) if self.nonneg else q


@dataclass(frozen=True)
class SolverDiagnostics:
    """Iteration record of a solve.

    ``history`` holds the objective (projected gradient) or the relative
    residual (Gauss-Seidel) after every accepted iteration.
    """

    status: SolverStatus
    iterations: int
    history: tuple[float, ...]
    final_value: float


@dataclass(frozen=True)
class Reconstruction:
    """Source map produced by a solver together with its diagnostics."""

    source_map: SourceMap
    diagnostics: SolverDiagnostics


def _finite(*arrays: Vector | float) -> bool:
    return all(bool(np.all(np.isfinite(a))) for a in arrays)


def projected_gradient(
    objective: Callable[[Vector], float],
    gradient: Callable[[Vector], Vector],
    x0: Vector,
    cfg: ReconConfig,
) -> tuple[Vector, SolverDiagnostics]:
    """Minimise a smooth convex objective over q >= 0 (or unconstrained).

    Steps along ``P(x - t g) - x`` with a Cauchy first step, Barzilai-Borwein
    steps afterwards and Armijo backtracking, so the objective never increases.
    Stops when the relative decrease drops below ``cfg.tol``, the objective
    reaches zero or no representable decrease remains.

    Args:
        objective: Full objective including the penalty.
        gradient: Gradient of ``objective``.
        x0: Starting point (projected before use).
        cfg: Stopping and constraint parameters.

    Returns:
        The final iterate and diagnostics.
    """
    x = cfg.project(np.asarray(x0, dtype=np.float64).copy())
    f = objective(x)
    g = gradient(x)
    history = [f]
    if not _finite(x, f, g):
        return x, SolverDiagnostics(SolverStatus.DIVERGED, 0, tuple(history), f)

    step: float | None = None
    status = SolverStatus.MAX_ITER
    iterations = 0
    for iterations in range(1, cfg.max_iter + 1):
        if f == 0.0:
            status = SolverStatus.CONVERGED
            iterations -= 1
            break
        if step is None:
            curvature = float(g @ (gradient(x + g) - g))
            step = float(g @ g) / curvature if curvature > 0.0 else 1.0

        d = cfg.project(x - step * g) - x
        slope = float(g @ d)
        if not np.any(d) or slope >= 0.0:
            status = SolverStatus.CONVERGED if not np.any(d) else SolverStatus.STAGNANT
            break
        if np.linalg.norm(d) <= Constants.STAGNATION_RTOL * np.linalg.norm(x):
            status = SolverStatus.STAGNANT
            break

        t = 1.0
        for _ in range(Constants.MAX_BACKTRACKS):
            x_new = x + t * d
            f_new = objective(x_new)
            if f_new <= f + Constants.ARMIJO_SIGMA * t * slope:
                break
            t *= 0.5
        else:
            status = SolverStatus.STAGNANT if math.isfinite(f_new) else SolverStatus.DIVERGED
            break

        g_new = gradient(x_new)
        if not _finite(x_new, f_new, g_new):
            status = SolverStatus.DIVERGED
            break

        s = x_new - x
        y = g_new - g
        sy = float(s @ y)
        if sy > 0.0:
            step = float(s @ s) / sy

        decrease = f - f_new
        x, f, g = x_new, f_new, g_new
        history.append(f)
        if f == 0.0 or decrease <= cfg.tol * abs(history[-2]):
            status = SolverStatus.CONVERGED
            break

    logger.debug("Projected gradient: %s after %d iterations, f=%.6g", status, iterations, f)
    return x, SolverDiagnostics(status, iterations, tuple(history), f)


def require_finite(name: str, values: NDArray[np.float64] | NDArray[np.complex128]) -> None:
    """Raise :class:`SolverError` if ``values`` contains NaN or infinity."""
    if not np.all(np.isfinite(values)):
        raise SolverError(f"{name} contains non-finite values")
