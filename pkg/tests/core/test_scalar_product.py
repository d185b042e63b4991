"""Tests for scalar products and norms."""

from fractions import Fraction
from logging import Logger
from unittest.mock import Mock

import pytest

from glmn_norm.config.defaults import VerifyConfig
from glmn_norm.core.alpha import HermiteAlpha, HermitePolynomial, UnitAlpha, onshell_hermite
from glmn_norm.core.gaudin import gaudin_det, gaudin_matrix, phi
from glmn_norm.core.highest_coefficient import HighestCoefficient
from glmn_norm.core.kernels import Grading, g
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalar_product import (
    HAT,
    PLAIN,
    NormInstance,
    ScalarProductCalculator,
    ScalarProductInstance,
    default_kappa,
    hat_alpha,
)
from glmn_norm.utils.exceptions import ColoringMismatch, DuplicateNode, KernelPole
from glmn_norm.verify.instances import InstanceGenerator

NORM_GRID = [
    (1, 1, (1,)),
    (1, 1, (2,)),
    (2, 1, (1, 0)),
    (2, 1, (1, 1)),
    (2, 1, (2, 1)),
    (1, 2, (1, 2)),
    (3, 0, (1, 1)),
    (2, 2, (1, 1, 1)),
]


@pytest.fixture
def mock_logger():
    """Create a mock logger"""
    return Mock(spec=Logger)


@pytest.fixture
def calculator(mock_logger):
    """Create a ScalarProductCalculator instance"""
    return ScalarProductCalculator(mock_logger, HighestCoefficient(mock_logger))


@pytest.fixture
def generator(mock_logger):
    """Seeded instance generator"""
    return InstanceGenerator(mock_logger, VerifyConfig(), seed=17)


def linear_alpha() -> HermiteAlpha:
    return HermiteAlpha([HermitePolynomial((Fraction(2), Fraction(-3)))])


class TestInstances:
    """Test ScalarProductInstance and NormInstance validation"""

    def test_different_colorings_are_rejected(self):
        with pytest.raises(ColoringMismatch):
            ScalarProductInstance(
                Grading(2, 1),
                ColoredTuple.of([Fraction(1)], []),
                ColoredTuple.of([], [Fraction(1)]),
                UnitAlpha(),
            )

    def test_default_kappa_counts_in_color_major_order(self):
        t = ColoredTuple.of([Fraction(5), Fraction(6)], [Fraction(7)])
        assert default_kappa(t) == ColoredTuple.of([Fraction(1), Fraction(2)], [Fraction(3)])

    def test_kappa_must_be_distinct_and_nonzero(self):
        grading = Grading(1, 1)
        t = ColoredTuple.of([Fraction(1), Fraction(3)])
        with pytest.raises(DuplicateNode):
            NormInstance(grading, t, UnitAlpha(), ColoredTuple.of([Fraction(2), Fraction(2)]))
        with pytest.raises(ValueError):
            NormInstance(grading, t, UnitAlpha(), ColoredTuple.of([Fraction(0), Fraction(2)]))


class TestScalarProduct:
    """Test ScalarProductCalculator.scalar_product"""

    def test_gl11_single_parameter_closed_form(self, calculator):
        grading = Grading(1, 1)
        alpha = linear_alpha()
        s, t = Fraction(1, 3), Fraction(5, 2)
        value = calculator.scalar_product(
            ScalarProductInstance(grading, ColoredTuple.of([s]), ColoredTuple.of([t]), alpha)
        )
        expected = g(grading, s, t) * (alpha.evaluate(1, s) - alpha.evaluate(1, t))
        assert value == expected

    @pytest.mark.parametrize(
        "m, n, shape", [(1, 1, (2,)), (2, 1, (1, 1)), (1, 2, (2, 1)), (2, 2, (1, 1, 1))]
    )
    def test_plain_and_hat_agree(self, calculator, generator, m, n, shape):
        grading = Grading(m, n)
        s, t = generator.pair(grading, shape)
        inst = ScalarProductInstance(grading, s, t, generator.polynomial_alpha(grading))
        assert calculator.scalar_product(inst, PLAIN) == calculator.scalar_product(inst, HAT)

    def test_threads_do_not_change_the_result(self, mock_logger, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (2, 1))
        inst = ScalarProductInstance(grading, s, t, generator.polynomial_alpha(grading))
        serial = ScalarProductCalculator(mock_logger, HighestCoefficient(mock_logger))
        threaded = ScalarProductCalculator(mock_logger, HighestCoefficient(mock_logger), threads=4)
        assert serial.scalar_product(inst) == threaded.scalar_product(inst)

    def test_kernel_pole_names_the_bipartition(self, calculator):
        grading = Grading(1, 1)
        s = ColoredTuple.of([Fraction(2)])
        inst = ScalarProductInstance(grading, s, s, UnitAlpha())
        with pytest.raises(KernelPole) as excinfo:
            calculator.scalar_product(inst)
        assert excinfo.value.context.startswith("bipartition #")

    def test_unknown_formulation(self, calculator):
        grading = Grading(1, 1)
        s = ColoredTuple.of([Fraction(2)])
        with pytest.raises(ValueError):
            calculator.scalar_product(ScalarProductInstance(grading, s, s, UnitAlpha()), "mixed")

    def test_complex_parameters(self, calculator):
        grading = Grading(1, 1)
        s, t = 0.5 + 1j, -1.5 + 0.25j
        value = calculator.scalar_product(
            ScalarProductInstance(grading, ColoredTuple.of([s]), ColoredTuple.of([t]), UnitAlpha())
        )
        assert value == pytest.approx(0)

    def test_hat_alpha_is_phi(self, generator):
        grading = Grading(2, 1)
        t, x = generator.onshell(grading, (2, 1))
        alpha = onshell_hermite(grading, t, x)
        for nu, j in t.positions():
            assert hat_alpha(grading, t, alpha, nu, j) == phi(grading, t, alpha, nu, j) == 1


class TestUnitAlphaSum:
    """Test ScalarProductCalculator.prop_zero_sum"""

    @pytest.mark.parametrize(
        "m, n, shape",
        [(1, 1, (1,)), (1, 1, (3,)), (2, 1, (2, 1)), (1, 2, (1, 1)), (3, 0, (2, 2)), (2, 2, (1, 1, 1))],
    )
    def test_alpha_free_sum_vanishes(self, calculator, generator, m, n, shape):
        grading = Grading(m, n)
        s, t = generator.pair(grading, shape)
        assert calculator.prop_zero_sum(grading, s, t) == 0

    def test_needs_a_parameter(self, calculator):
        empty = ColoredTuple.of([])
        with pytest.raises(ValueError):
            calculator.prop_zero_sum(Grading(1, 1), empty, empty)


class TestNorm:
    """Test norm_limit, normalized_norm and the X-derivative recursion"""

    def test_gl11_single_parameter_norm_is_x(self, calculator):
        grading = Grading(1, 1)
        t = ColoredTuple.of([Fraction(1, 2)])
        x = ColoredTuple.of([Fraction(5)])
        alpha = onshell_hermite(grading, t, x)
        assert calculator.normalized_norm(NormInstance(grading, t, alpha)) == 5

    @pytest.mark.parametrize("m, n, shape", NORM_GRID)
    def test_normalized_norm_is_the_gaudin_determinant(self, calculator, generator, m, n, shape):
        grading = Grading(m, n)
        t, x = generator.onshell(grading, shape)
        alpha = onshell_hermite(grading, t, x)
        lhs = calculator.normalized_norm(NormInstance(grading, t, alpha))
        assert lhs == gaudin_det(gaudin_matrix(grading, t, x))

    def test_limit_does_not_depend_on_kappa(self, calculator, generator):
        grading = Grading(2, 1)
        t, x = generator.onshell(grading, (2, 1))
        alpha = onshell_hermite(grading, t, x)
        kappa = ColoredTuple.of([Fraction(-3), Fraction(1, 2)], [Fraction(7)])
        assert calculator.norm_limit(NormInstance(grading, t, alpha)) == calculator.norm_limit(
            NormInstance(grading, t, alpha, kappa)
        )

    def test_vanishing_at_zero_x(self, calculator, generator):
        grading = Grading(2, 1)
        t, _ = generator.onshell(grading, (1, 1))
        assert calculator.vanishing_at_zero_x(grading, t) == (0, 0)

    @pytest.mark.parametrize("m, n, shape", [(1, 1, (2,)), (2, 1, (1, 1))])
    def test_x_derivative_recursion(self, calculator, generator, m, n, shape):
        grading = Grading(m, n)
        t, x = generator.onshell(grading, shape)
        for mu, j in t.positions():
            report = calculator.x_derivative_check(grading, t, x, mu, j)
            assert report.lhs == report.rhs == report.raw_rhs
            assert report.second_difference == 0
            assert report.reduced_onshell
            assert report.passed
