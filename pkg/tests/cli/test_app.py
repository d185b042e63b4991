"""Tests for GlmnNormApp subcommand dispatch."""

from fractions import Fraction
from logging import Logger
from pathlib import Path
from unittest.mock import Mock, patch

import pytest

from glmn_norm.app import COMMANDS, GlmnNormApp
from glmn_norm.config.config import Config
from glmn_norm.config.config_reader import ConfigReader
from glmn_norm.config.defaults import ReportConfig, SolverConfig, VerifyConfig
from glmn_norm.config.run_config_reader import parse_run_config
from glmn_norm.reports.models import Report
from glmn_norm.utils.exceptions import ConfigError, IndexOutOfRange

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


@pytest.fixture(autouse=True)
def settings_dir(tmp_path, monkeypatch):
    """Ignore any settings file in the home directory"""
    monkeypatch.setattr(ConfigReader, "CONFIG_DIR", tmp_path)


@pytest.fixture
def mock_logger():
    """Create a mock logger"""
    return Mock(spec=Logger)


def make_app(logger, run=None, path="run.json", **kwargs) -> GlmnNormApp:
    config = Mock(spec=Config)
    config.run_config_path = path
    config.report = ReportConfig()
    config.solver = SolverConfig()
    config.verify = VerifyConfig()
    if run is not None:
        config.run = parse_run_config(run)
    return GlmnNormApp(logger, config, **kwargs)


def from_file(logger, name: str) -> Config:
    return Config(logger, run_config_path=CONFIGS / f"{name}.json")


class TestDispatch:
    """Test GlmnNormApp.run"""

    def test_every_command_has_a_handler(self, mock_logger):
        app = make_app(mock_logger)
        assert set(app._handlers) == set(COMMANDS)

    def test_unknown_command(self, mock_logger):
        with pytest.raises(ConfigError, match="Unknown command"):
            make_app(mock_logger).run("norm")

    @pytest.mark.parametrize("command", [c for c in COMMANDS if c != "verify-all"])
    def test_shipped_configs_pass(self, mock_logger, command):
        app = GlmnNormApp(mock_logger, from_file(mock_logger, command))
        report = app.run(command)
        assert report.command == command
        assert report.passed, report.failures()


class TestSubcommands:
    """Test individual subcommands"""

    def test_hc_eval_reports_both_strategies(self, mock_logger):
        report = GlmnNormApp(mock_logger, from_file(mock_logger, "hc-eval")).run("hc-eval")
        value, cross = report.checks
        assert value.passed is None
        assert cross.name == "first == last"
        assert cross.lhs == value.value

    def test_gaudin_det_single_parameter(self, mock_logger):
        app = make_app(
            mock_logger,
            {"grading": {"m": 1, "n": 1}, "t": [["2"]], "x": [["-7/3"]]},
        )
        report = app.run("gaudin-det")
        assert report.checks[0].value == Fraction(-7, 3)
        assert report.data["size"] == 1

    def test_prop_zero_over_complex_numbers(self, mock_logger):
        app = make_app(
            mock_logger,
            {
                "grading": {"m": 2, "n": 1},
                "field": "complex",
                "s": [[[0.5, 1.0]], [[2.0, -0.5]]],
                "t": [[[-1.0, 0.25]], [[1.5, 2.0]]],
            },
        )
        assert app.run("prop-zero").passed

    def test_norm_check_needs_rational_field(self, mock_logger):
        app = make_app(
            mock_logger,
            {"grading": {"m": 1, "n": 1}, "field": "complex", "t": [[[0.5, 0.0]]]},
        )
        with pytest.raises(ConfigError, match="rational"):
            app.run("norm-check")

    def test_missing_required_entry(self, mock_logger):
        app = make_app(mock_logger, {"grading": {"m": 1, "n": 1}, "s": [["2"]], "t": [["1"]]})
        with pytest.raises(ConfigError, match="'alpha' is required"):
            app.run("scalar-product")

    def test_residue_check_for_one_position(self, mock_logger):
        run = {
            "grading": {"m": 2, "n": 1},
            "s": [["1/3", "6"], ["-5/2"]],
            "t": [["2", "-7"], ["9/2"]],
            "mu": 1,
            "j": 2,
        }
        report = make_app(mock_logger, run).run("residue-check")
        assert [check.name for check in report.checks] == ["residue (1,2)"]
        assert report.passed

    def test_residue_check_peeling_the_last_color(self, mock_logger):
        run = {
            "grading": {"m": 2, "n": 1},
            "s": [["1/3"], ["-5/2", "6"]],
            "t": [["2"], ["9/2", "-7"]],
            "strategy": "last",
        }
        report = make_app(mock_logger, run).run("residue-check")
        assert len(report.checks) == 3
        assert report.data["strategy"] == "last"
        assert report.passed

    def test_hc_eval_pivot_zero_is_out_of_range(self, mock_logger):
        run = {
            "grading": {"m": 2, "n": 1},
            "s": [["1/2"], ["13/3"]],
            "t": [["2"], ["11/2"]],
            "pivot": 0,
        }
        with pytest.raises(IndexOutOfRange):
            make_app(mock_logger, run).run("hc-eval")


class TestVerifyAll:
    """Test the seed handed to the acceptance suite"""

    @patch("glmn_norm.app.AcceptanceSuite")
    def test_command_line_seed_wins(self, mock_suite_class, mock_logger):
        mock_suite_class.return_value.run.return_value = Report("verify-all")
        app = make_app(mock_logger, {"grading": {"m": 1, "n": 1}, "seed": 5}, seed=9, threads=2)

        app.run("verify-all")

        mock_suite_class.assert_called_once_with(mock_logger, app.config, threads=2, seed=9)

    @patch("glmn_norm.app.AcceptanceSuite")
    def test_run_config_seed(self, mock_suite_class, mock_logger):
        mock_suite_class.return_value.run.return_value = Report("verify-all")
        app = make_app(mock_logger, {"grading": {"m": 1, "n": 1}, "seed": 5})

        app.run("verify-all")

        assert mock_suite_class.call_args.kwargs["seed"] == 5

    @patch("glmn_norm.app.AcceptanceSuite")
    def test_no_run_config(self, mock_suite_class, mock_logger):
        mock_suite_class.return_value.run.return_value = Report("verify-all")
        app = make_app(mock_logger, path=None)

        app.run("verify-all")

        assert mock_suite_class.call_args.kwargs["seed"] is None
