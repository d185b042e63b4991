"""Tests for the seeded instance generator."""

from fractions import Fraction
from logging import Logger
from unittest.mock import Mock

import pytest

from glmn_norm.config.defaults import VerifyConfig
from glmn_norm.core.kernels import Grading
from glmn_norm.utils.exceptions import InternalError
from glmn_norm.verify.instances import InstanceGenerator, grid_gradings, grid_shapes


@pytest.fixture
def mock_logger():
    """Create a mock logger"""
    return Mock(spec=Logger)


class TestGrid:
    """Test grid_shapes and grid_gradings"""

    def test_shapes_spread_over_the_colors(self):
        assert grid_shapes(Grading(2, 1), 2) == [(1, 0), (0, 1), (2, 0), (0, 2), (1, 1)]

    def test_interior_colors_can_be_empty(self):
        shapes = grid_shapes(Grading(2, 2), 4)
        assert (1, 0, 1) in shapes
        assert (0, 1, 2) in shapes
        assert (1, 1, 1) in shapes
        assert len(shapes) == len(set(shapes))

    def test_single_color(self):
        assert grid_shapes(Grading(1, 1), 4) == [(1,), (2,)]

    def test_gradings_respect_the_rank(self):
        assert [(g.m, g.n) for g in grid_gradings(3)] == [(1, 1), (2, 1), (1, 2), (3, 0)]


class TestInstanceGenerator:
    """Test InstanceGenerator"""

    def test_seed_defaults_to_settings(self, mock_logger):
        generator = InstanceGenerator(mock_logger, VerifyConfig(seed=4))
        assert generator.seed == 4
        assert InstanceGenerator(mock_logger, VerifyConfig(seed=4), seed=8).seed == 8

    def test_same_seed_same_instances(self, mock_logger):
        grading = Grading(2, 1)
        first = InstanceGenerator(mock_logger, VerifyConfig(), seed=1).pair(grading, (2, 1))
        second = InstanceGenerator(mock_logger, VerifyConfig(), seed=1).pair(grading, (2, 1))
        assert first == second

    def test_rationals_are_bounded(self, mock_logger):
        settings = VerifyConfig(numerator_bound=5, denominator_bound=3)
        generator = InstanceGenerator(mock_logger, settings, seed=2)
        for _ in range(100):
            value = generator.rational()
            assert abs(value) <= 5
            assert value.denominator <= 3

    def test_pool_keeps_differences_clear_of_kernel_poles(self, mock_logger):
        grading = Grading(2, 1, Fraction(1, 2))
        generator = InstanceGenerator(mock_logger, VerifyConfig(), seed=6)
        s, t = generator.pair(grading, (2, 2))
        values = [v for _, _, v in s.flat()] + [v for _, _, v in t.flat()]
        forbidden = {0, grading.c, -grading.c, 2 * grading.c, -2 * grading.c}
        for i, a in enumerate(values):
            for b in values[i + 1 :]:
                assert a - b not in forbidden

    def test_exhausted_pool_raises(self, mock_logger):
        settings = VerifyConfig(numerator_bound=1, denominator_bound=1)
        generator = InstanceGenerator(mock_logger, settings, seed=0)
        with pytest.raises(InternalError, match="numerator_bound"):
            generator.pool(Grading(1, 1), 4)

    def test_onshell_shapes(self, mock_logger):
        generator = InstanceGenerator(mock_logger, VerifyConfig(), seed=0)
        t, x = generator.onshell(Grading(2, 2), (1, 0, 2))
        assert t.shape == x.shape == (1, 0, 2)

    def test_polynomial_alpha_has_one_polynomial_per_color(self, mock_logger):
        generator = InstanceGenerator(mock_logger, VerifyConfig(), seed=0)
        alpha = generator.polynomial_alpha(Grading(2, 2), degree=3)
        assert len(alpha.polynomials) == 3
