"""Main configuration class for glmn-norm."""

from logging import Logger
from pathlib import Path
from typing import Optional, Union

from glmn_norm.config.config_reader import ConfigReader
from glmn_norm.config.defaults import ReportConfig, SolverConfig, VerifyConfig
from glmn_norm.config.run_config_reader import RunConfig, RunConfigReader
from glmn_norm.utils.exceptions import ConfigError


class Config:
    """Main configuration class providing namespaced access to all config components.

    Usage:
        config = Config(logger, run_config_path="configs/norm-check.json")

        # Settings file
        tol = config.solver.tol
        seed = config.verify.seed
        icon = config.report.pass_icon

        # Run config
        grading = config.run.grading
        t = config.run.require("t")
    """

    def __init__(self, logger: Logger, run_config_path: Optional[Union[str, Path]] = None):
        self.logger = logger
        self.run_config_path = run_config_path
        self._config_reader: Optional[ConfigReader] = None
        self._run_config_reader: Optional[RunConfigReader] = None
        self._solver: Optional[SolverConfig] = None
        self._verify: Optional[VerifyConfig] = None
        self._report: Optional[ReportConfig] = None
        self._run: Optional[RunConfig] = None

    @property
    def solver(self) -> SolverConfig:
        """Get the Solver configuration."""
        if self._solver is None:
            config_reader = self._get_config_reader()
            self._solver = config_reader.get_solver_config()
        return self._solver

    @property
    def verify(self) -> VerifyConfig:
        """Get the Verify configuration."""
        if self._verify is None:
            config_reader = self._get_config_reader()
            self._verify = config_reader.get_verify_config()
        return self._verify

    @property
    def report(self) -> ReportConfig:
        """Get the Report configuration."""
        if self._report is None:
            config_reader = self._get_config_reader()
            self._report = config_reader.get_report_config()
        return self._report

    @property
    def run(self) -> RunConfig:
        """Get the run configuration given by --config."""
        if self._run is None:
            if self.run_config_path is None:
                raise ConfigError("This command needs a run config: pass --config PATH")
            if self._run_config_reader is None:
                self._run_config_reader = RunConfigReader(self.logger, self.run_config_path)
            self._run = self._run_config_reader.get_run_config()
        return self._run

    def _get_config_reader(self) -> ConfigReader:
        """Get the settings reader (shared between solver, verify, and report)."""
        if self._config_reader is None:
            self._config_reader = ConfigReader(self.logger)
        return self._config_reader
