import tomllib
from dataclasses import fields
from logging import Logger
from pathlib import Path
from typing import Any, Optional, TypeVar

from glmn_norm.config.defaults import ReportConfig, SolverConfig, VerifyConfig
from glmn_norm.utils.exceptions import ConfigError

T = TypeVar("T")


class ConfigReader:
    """Manages reading the settings file"""

    CONFIG_DIR = Path.home() / ".config" / "glmn-norm"
    CONFIG_FILE_NAME = "config.toml"

    def __init__(self, logger: Logger):
        self.logger = logger
        self.config_file = self.CONFIG_DIR / self.CONFIG_FILE_NAME
        self._data: Optional[dict] = None
        self._solver_config: Optional[SolverConfig] = None
        self._verify_config: Optional[VerifyConfig] = None
        self._report_config: Optional[ReportConfig] = None

    def _load_config(self) -> dict:
        """Load settings from file

        Returns:
            Settings data dictionary, empty when there is no file
        """
        if self._data is None:
            if self.config_file.exists():
                try:
                    with open(self.config_file, "rb") as f:
                        self._data = tomllib.load(f)
                except tomllib.TOMLDecodeError as e:
                    raise ConfigError(f"Invalid TOML in {self.config_file}: {e}") from e
                self.logger.debug(f"Loaded settings from {self.config_file}")
            else:
                self._data = {}
        return self._data

    def _section(self, name: str, cls: type[T]) -> T:
        data: dict[str, Any] = self._load_config().get(name, {})
        if not isinstance(data, dict):
            raise ConfigError(f"[{name}] in {self.config_file} must be a table")
        known = {f.name for f in fields(cls)}  # type: ignore[arg-type]
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(
                f"Unknown keys in [{name}]: {', '.join(unknown)}. "
                f"Expected any of: {', '.join(sorted(known))}"
            )
        return cls(**data)

    def get_solver_config(self) -> SolverConfig:
        """Get the Solver configuration"""
        if self._solver_config is None:
            self._solver_config = self._section("solver", SolverConfig)
        return self._solver_config

    def get_verify_config(self) -> VerifyConfig:
        """Get the Verify configuration"""
        if self._verify_config is None:
            self._verify_config = self._section("verify", VerifyConfig)
        return self._verify_config

    def get_report_config(self) -> ReportConfig:
        """Get the Report configuration"""
        if self._report_config is None:
            self._report_config = self._section("report", ReportConfig)
        return self._report_config
