"""Tests for solver configuration and the projected-gradient engine."""

from collections.abc import Callable

import numpy as np
import pytest

from aeroimaging.errors import DomainError, SolverError
from aeroimaging.recon.solvers import (
    Penalty,
    ReconConfig,
    SolverStatus,
    projected_gradient,
    require_finite,
)


def _quadratic(
    target: np.ndarray, weights: np.ndarray
) -> tuple[Callable[[np.ndarray], float], Callable[[np.ndarray], np.ndarray]]:
    def objective(x: np.ndarray) -> float:
        r = x - target
        return float(np.sum(weights * r * r))

    def gradient(x: np.ndarray) -> np.ndarray:
        return 2.0 * weights * (x - target)

    return objective, gradient


class TestReconConfig:
    """Tests for ReconConfig validation and penalty helpers."""

    def test_defaults(self) -> None:
        """Test the unregularised, non-negative default."""
        cfg = ReconConfig()

        assert cfg.alpha == 0.0
        assert cfg.penalty is Penalty.QUADRATIC
        assert cfg.nonneg

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": -1.0},
            {"alpha": float("nan")},
            {"tol": 0.0},
            {"max_iter": 0},
            {"penalty": Penalty.L1, "nonneg": False},
        ],
    )
    def test_invalid(self, kwargs: dict[str, object]) -> None:
        """Test that out-of-range parameters raise DomainError."""
        with pytest.raises(DomainError):
            ReconConfig(**kwargs)

    def test_penalties(self) -> None:
        """Test penalty values and gradients for both functionals."""
        q = np.array([1.0, 2.0, 0.0])
        quadratic = ReconConfig(alpha=0.5)
        l1 = ReconConfig(alpha=0.5, penalty=Penalty.L1)

        assert quadratic.penalty_value(q) == pytest.approx(2.5)
        np.testing.assert_allclose(quadratic.penalty_gradient(q), [1.0, 2.0, 0.0])
        assert l1.penalty_value(q) == pytest.approx(1.5)
        np.testing.assert_allclose(l1.penalty_gradient(q), 0.5)

    def test_penalty_from_string(self) -> None:
        """Test that CLI strings map onto the enum."""
        assert Penalty("l1") is Penalty.L1
        assert Penalty("l2") is Penalty.QUADRATIC

    def test_projection(self) -> None:
        """Test clipping at zero only under the non-negativity constraint."""
        x = np.array([-1.0, 2.0])

        np.testing.assert_array_equal(ReconConfig().project(x), [0.0, 2.0])
        np.testing.assert_array_equal(ReconConfig(nonneg=False).project(x), x)


class TestSolverStatus:
    """Tests for SolverStatus."""

    def test_converged_states(self) -> None:
        """Test which states count as converged."""
        assert SolverStatus.CONVERGED.converged
        assert SolverStatus.STAGNANT.converged
        assert not SolverStatus.MAX_ITER.converged
        assert not SolverStatus.DIVERGED.converged
        assert str(SolverStatus.STAGNANT) == "converged-stagnant"


class TestProjectedGradient:
    """Tests for projected_gradient."""

    def test_unconstrained_minimum(self) -> None:
        """Test convergence to the minimiser of a separable quadratic."""
        target = np.array([1.0, -2.0, 3.0])
        objective, gradient = _quadratic(target, np.array([1.0, 10.0, 0.1]))

        x, diag = projected_gradient(
            objective, gradient, np.zeros(3), ReconConfig(nonneg=False, tol=1e-14)
        )

        np.testing.assert_allclose(x, target, atol=1e-6)
        assert diag.status.converged

    def test_bound_constraint_active(self) -> None:
        """Test that negative target components are clipped to zero."""
        target = np.array([1.0, -2.0, 3.0])
        objective, gradient = _quadratic(target, np.ones(3))

        x, _ = projected_gradient(objective, gradient, np.zeros(3), ReconConfig(tol=1e-14))

        np.testing.assert_allclose(x, [1.0, 0.0, 3.0], atol=1e-8)

    def test_zero_objective_returns_immediately(self) -> None:
        """Test that a start at f = 0 reports convergence after zero iterations."""
        objective, gradient = _quadratic(np.zeros(2), np.ones(2))

        x, diag = projected_gradient(objective, gradient, np.zeros(2), ReconConfig())

        np.testing.assert_array_equal(x, 0.0)
        assert diag.status is SolverStatus.CONVERGED
        assert diag.iterations == 0
        assert diag.history == (0.0,)

    def test_iteration_limit(self) -> None:
        """Test that hitting max_iter is reported with a monotone history."""
        target = np.array([5.0, 1.0, 3.0])
        objective, gradient = _quadratic(target, np.array([1.0, 1e4, 1e-4]))

        _, diag = projected_gradient(
            objective, gradient, np.zeros(3), ReconConfig(max_iter=2, tol=1e-15)
        )

        assert diag.status is SolverStatus.MAX_ITER
        assert diag.iterations == 2
        assert all(b <= a for a, b in zip(diag.history, diag.history[1:], strict=False))

    def test_non_finite_start(self) -> None:
        """Test that a NaN objective at the start reports divergence."""
        x, diag = projected_gradient(
            lambda v: float("nan"), lambda v: np.zeros_like(v), np.ones(2), ReconConfig()
        )

        assert diag.status is SolverStatus.DIVERGED
        np.testing.assert_array_equal(x, 1.0)


def test_require_finite() -> None:
    """Test that non-finite inputs raise SolverError."""
    require_finite("ok", np.ones(3))
    with pytest.raises(SolverError, match="bad"):
        require_finite("bad", np.array([1.0, np.inf]))
