"""Tests for the Newton Bethe solver."""

from fractions import Fraction
from logging import Logger
from unittest.mock import Mock, patch

import numpy as np
import pytest

from glmn_norm.config.defaults import SolverConfig
from glmn_norm.core.alpha import ProductAlpha
from glmn_norm.core.bethe_solver import BetheSolver
from glmn_norm.core.kernels import Grading
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.utils.exceptions import KernelPole, NonConvergence, SingularJacobian


@pytest.fixture
def mock_logger():
    """Create a mock logger"""
    return Mock(spec=Logger)


@pytest.fixture
def solver(mock_logger):
    """Create a BetheSolver instance"""
    return BetheSolver(mock_logger, SolverConfig())


@pytest.fixture
def two_site():
    """gl(2|0) at c = 2 with inhomogeneities 0 and 4; the root is t = 1"""
    grading = Grading(2, 0, Fraction(2))
    return grading, ProductAlpha(grading, [[Fraction(0), Fraction(4)]])


class TestResidual:
    """Test BetheSolver.residual_vector"""

    def test_residual_at_the_root_and_away(self, solver, two_site):
        grading, alpha = two_site
        assert solver.residual_vector(grading, ColoredTuple.of([1 + 0j]), alpha) == pytest.approx([0])
        assert solver.residual_vector(grading, ColoredTuple.of([2 + 0j]), alpha) == pytest.approx([-1])


class TestSolveNewton:
    """Test BetheSolver.solve_newton"""

    def test_converges_to_the_closed_form_root(self, solver, two_site, mock_logger):
        grading, alpha = two_site
        report = solver.solve_newton(grading, alpha, ColoredTuple.of([0.8]))
        assert report.converged
        assert report.iterations <= 10
        assert report.t.entry(1, 1) == pytest.approx(1, abs=1e-10)
        assert report.history[0] > report.residual_norm
        mock_logger.info.assert_called_once()

    def test_full_newton_steps_without_damping(self, solver, two_site):
        grading, alpha = two_site
        report = solver.solve_newton(grading, alpha, ColoredTuple.of([0.8]), damping=False)
        assert report.converged
        assert report.t.entry(1, 1) == pytest.approx(1, abs=1e-10)

    def test_root_as_guess_needs_no_iteration(self, solver, two_site):
        grading, alpha = two_site
        report = solver.solve_newton(grading, alpha, ColoredTuple.of([Fraction(1)]))
        assert report.converged
        assert report.iterations == 0

    def test_pole_at_the_guess(self, solver, two_site):
        grading, alpha = two_site
        with pytest.raises(KernelPole):
            solver.solve_newton(grading, alpha, ColoredTuple.of([Fraction(0)]))

    def test_strict_raises_without_convergence(self, solver, two_site):
        grading, alpha = two_site
        with pytest.raises(NonConvergence):
            solver.solve_newton(grading, alpha, ColoredTuple.of([0.8]), max_iter=0, strict=True)

    def test_non_strict_reports_without_convergence(self, solver, two_site):
        grading, alpha = two_site
        report = solver.solve_newton(grading, alpha, ColoredTuple.of([0.8]), max_iter=0)
        assert not report.converged
        assert report.iterations == 0

    def test_singular_jacobian(self, solver, two_site):
        grading, alpha = two_site
        with patch(
            "glmn_norm.core.bethe_solver.np.linalg.solve",
            side_effect=np.linalg.LinAlgError("singular"),
        ):
            with pytest.raises(SingularJacobian):
                solver.solve_newton(grading, alpha, ColoredTuple.of([0.8]))

    def test_to_dict(self, solver, two_site):
        grading, alpha = two_site
        data = solver.solve_newton(grading, alpha, ColoredTuple.of([Fraction(1)])).to_dict()
        assert data["t"] == [[[1.0, 0.0]]]
        assert data["converged"] is True
        assert data["iterations"] == 0
        assert set(data) == {"t", "residual_norm", "iterations", "converged", "history"}


class TestJacobian:
    """Test analytic against finite-difference Jacobians"""

    @pytest.mark.parametrize(
        "m, n, t",
        [
            (2, 0, ColoredTuple.of([0.3 + 0.7j, -1.1 + 0.4j])),
            (1, 1, ColoredTuple.of([0.5 - 0.6j, 1.7 + 0.9j])),
            (2, 1, ColoredTuple.of([0.2 + 1.1j], [-0.8 + 0.5j])),
        ],
    )
    def test_analytic_matches_finite_differences(self, solver, m, n, t):
        grading = Grading(m, n)
        xi = [[-2 + 0.5j, 3 - 0.25j] for _ in range(grading.N)]
        alpha = ProductAlpha(grading, xi)
        analytic = solver.analytic_jacobian(grading, t, alpha)
        numeric = solver.finite_difference_jacobian(grading, t, alpha)
        np.testing.assert_allclose(analytic, numeric, rtol=1e-5, atol=1e-7)
