"""Tests for the highest coefficient recursions."""

from fractions import Fraction
from logging import Logger
from unittest.mock import Mock

import pytest

from glmn_norm.config.defaults import VerifyConfig
from glmn_norm.core.kernels import Grading, g
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.highest_coefficient import (
    PEEL_FIRST,
    PEEL_LAST,
    HCInstance,
    HighestCoefficient,
)
from glmn_norm.core.scalars import EPS
from glmn_norm.utils.exceptions import CardinalityMismatch, IndexOutOfRange
from glmn_norm.verify.instances import InstanceGenerator


@pytest.fixture
def mock_logger():
    """Create a mock logger"""
    return Mock(spec=Logger)


@pytest.fixture
def hc(mock_logger):
    """Create a HighestCoefficient instance"""
    return HighestCoefficient(mock_logger)


@pytest.fixture
def generator(mock_logger):
    """Seeded instance generator"""
    return InstanceGenerator(mock_logger, VerifyConfig(), seed=11)


def single(value) -> ColoredTuple:
    return ColoredTuple.of([Fraction(value)])


class TestHCInstance:
    """Test HCInstance validation"""

    def test_rejects_unmatched_cardinalities(self):
        with pytest.raises(CardinalityMismatch):
            HCInstance(
                Grading(2, 1),
                ColoredTuple.of([Fraction(1)], []),
                ColoredTuple.of([], [Fraction(1)]),
            )


class TestClosedForms:
    """Test the closed values of the highest coefficient"""

    def test_empty_tuples_give_one(self, hc):
        empty = ColoredTuple.of([], [])
        assert hc.z_eval(HCInstance(Grading(2, 1), empty, empty)) == 1

    def test_gl11_is_a_product_of_g(self, hc):
        grading = Grading(1, 1, Fraction(3))
        s = ColoredTuple.of([Fraction(1), Fraction(7, 2)])
        t = ColoredTuple.of([Fraction(-2), Fraction(5)])
        expected = 1
        for a in s.color(1):
            for b in t.color(1):
                expected *= g(grading, a, b)
        assert hc.z_eval(HCInstance(grading, s, t)) == expected

    @pytest.mark.parametrize("strategy", [PEEL_FIRST, PEEL_LAST])
    def test_gl20_single_parameter(self, hc, strategy):
        grading = Grading(2, 0)
        s, t = single(Fraction(1, 3)), single(4)
        value = hc.z_eval(HCInstance(grading, s, t), strategy)
        assert value == g(grading, Fraction(4), Fraction(1, 3))

    def test_gl0n_is_gln0_with_negated_coupling(self, hc):
        s, t = single(Fraction(1, 3)), single(4)
        bosonic = hc.z_eval(HCInstance(Grading(2, 0, Fraction(-1)), s, t))
        assert hc.z_eval(HCInstance(Grading(0, 2), s, t)) == bosonic

    def test_eps_valued_parameters(self, hc):
        grading = Grading(1, 1)
        s = ColoredTuple.of([EPS.shift(Fraction(2), Fraction(1))])
        t = ColoredTuple.of([EPS.embed(Fraction(2))])
        value = hc.z_eval(HCInstance(grading, s, t))
        assert (value * EPS.epsilon).limit_at_zero() == 1


class TestCrossRecursion:
    """Test that peeling the first and the last color agree"""

    @pytest.mark.parametrize(
        "m, n, shape",
        [
            (2, 1, (1, 1)),
            (2, 1, (2, 1)),
            (1, 2, (1, 1)),
            (1, 2, (1, 2)),
            (3, 0, (2, 1)),
            (2, 2, (1, 1, 1)),
            (2, 1, (1, 0)),
            (2, 1, (0, 2)),
            (2, 1, (1, 2)),
            (2, 1, (2, 2)),
            (2, 1, (1, 3)),
            (2, 2, (1, 2, 0)),
            (2, 2, (0, 1, 2)),
        ],
    )
    def test_strategies_agree(self, hc, generator, m, n, shape):
        grading = Grading(m, n)
        s, t = generator.pair(grading, shape)
        inst = HCInstance(grading, s, t)
        assert hc.z_eval(inst, PEEL_FIRST) == hc.z_eval(inst, PEEL_LAST)

    @pytest.mark.parametrize("strategy", [PEEL_FIRST, PEEL_LAST])
    @pytest.mark.parametrize("pivot", [1, 2])
    def test_even_last_color_of_the_odd_line(self, hc, strategy, pivot):
        grading = Grading(2, 1)
        s = ColoredTuple.of([], [Fraction(5), Fraction(7)])
        t = ColoredTuple.of([], [Fraction(0), Fraction(2)])
        value = hc.z_eval(HCInstance(grading, s, t), strategy, pivot)
        assert value == Fraction(1, 525)

    def test_every_last_pivot_of_three(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (1, 3))
        inst = HCInstance(grading, s, t)
        reference = hc.z_eval(inst, PEEL_FIRST)
        assert all(hc.z_eval(inst, PEEL_LAST, pivot) == reference for pivot in (1, 2, 3))

    def test_every_pivot_gives_the_same_value(self, hc, generator):
        grading = Grading(3, 0)
        s, t = generator.pair(grading, (2, 2))
        inst = HCInstance(grading, s, t)
        values = {hc.z_eval(inst, strategy, pivot) for strategy in (PEEL_FIRST, PEEL_LAST) for pivot in (1, 2)}
        assert len(values) == 1

    def test_pivot_out_of_range(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (1, 1))
        with pytest.raises(IndexOutOfRange):
            hc.z_eval(HCInstance(grading, s, t), PEEL_FIRST, pivot=2)

    def test_unknown_strategy(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (1, 1))
        with pytest.raises(ValueError):
            hc.z_eval(HCInstance(grading, s, t), "middle")


class TestMemo:
    """Test the memo table"""

    def test_repeated_evaluation_hits_the_memo(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (1, 1))
        inst = HCInstance(grading, s, t)
        first = hc.z_eval(inst)
        misses = hc.memo_stats().misses
        assert hc.z_eval(inst) == first
        stats = hc.memo_stats()
        assert stats.misses == misses
        assert stats.hits >= 1

    def test_clear_resets_statistics(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (1, 1))
        hc.z_eval(HCInstance(grading, s, t))
        hc.clear()
        assert hc.memo_stats().entries == 0
        assert hc.memo_stats().hits == 0

    def test_exact_value_survives_an_eps_evaluation_of_the_same_point(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (2, 1))
        inst = HCInstance(grading, s, t)
        hc.z_eval(HCInstance(grading, s.map(EPS.embed), t.map(EPS.embed)))
        value = hc.z_eval(inst)
        assert isinstance(value, Fraction)
        hc.clear()
        assert hc.z_eval(inst) == value

    def test_bounded_memo_evicts_without_changing_values(self, mock_logger, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (2, 1))
        inst = HCInstance(grading, s, t)
        bounded = HighestCoefficient(mock_logger, max_entries=2)
        value = bounded.z_eval(inst)
        stats = bounded.memo_stats()
        assert stats.entries <= 2
        assert stats.evictions > 0
        assert value == HighestCoefficient(mock_logger).z_eval(inst)

    def test_memo_size_must_be_positive(self, mock_logger):
        with pytest.raises(ValueError):
            HighestCoefficient(mock_logger, max_entries=0)


class TestResidue:
    """Test HighestCoefficient.z_residue_check"""

    @pytest.mark.parametrize("strategy", [PEEL_FIRST, PEEL_LAST])
    @pytest.mark.parametrize(
        "m, n, shape",
        [(1, 1, (2,)), (2, 1, (1, 1)), (2, 1, (2, 1)), (2, 1, (1, 2)), (2, 2, (1, 1, 1))],
    )
    def test_residues_match_the_closed_form(self, hc, generator, m, n, shape, strategy):
        grading = Grading(m, n)
        s, t = generator.pair(grading, shape)
        reports = hc.residue_check_all(HCInstance(grading, s, t), strategy=strategy)
        assert len(reports) == sum(shape)
        assert all(report.passed for report in reports)

    def test_restricting_to_colors(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (2, 1))
        reports = hc.residue_check_all(HCInstance(grading, s, t), colors=[2])
        assert [(r.color, r.index) for r in reports] == [(2, 1)]

    def test_logs_the_verdict(self, hc, generator, mock_logger):
        grading = Grading(1, 1)
        s, t = generator.pair(grading, (1,))
        hc.z_residue_check(HCInstance(grading, s, t), 1, 1)
        assert any("residue (1,1)" in str(call) for call in mock_logger.debug.call_args_list)

    def test_complex_parameters_are_rejected(self, hc):
        grading = Grading(1, 1)
        inst = HCInstance(grading, ColoredTuple.of([1j]), ColoredTuple.of([2j]))
        with pytest.raises(TypeError):
            hc.z_residue_check(inst, 1, 1)

    def test_residue_values_are_exact_rationals(self, hc, generator):
        grading = Grading(2, 1)
        s, t = generator.pair(grading, (1, 2))
        inst = HCInstance(grading, s, t)
        hc.z_eval(inst)
        report = hc.z_residue_check(inst, 2, 1, PEEL_LAST)
        assert isinstance(report.lhs, Fraction)
        assert isinstance(report.rhs, Fraction)
        assert report.passed
