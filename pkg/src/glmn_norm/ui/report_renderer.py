"""Rich rendering of reports for the terminal."""

from logging import Logger
from typing import Any, Optional

from rich.console import Console, Group
from rich.style import Style
from rich.table import Table
from rich.text import Text

from glmn_norm.config.config import Config
from glmn_norm.reports.codec import to_jsonable
from glmn_norm.reports.models import CheckResult, Report

MAX_CELL = 60


class ReportRenderer:
    """Turns a Report into a rich table plus a one-line verdict"""

    def __init__(self, logger: Logger, config: Config):
        self.logger = logger
        self.config = config

    def _get_status_icon_and_colour(self, passed: Optional[bool]) -> tuple[str, str]:
        settings = self.config.report
        return settings.icon(passed), settings.colour(passed)

    def _format_text(self, text: str, colour: str) -> Text:
        formatted_text = Text(text)
        formatted_text.stylize(Style(color=colour))
        return formatted_text

    @staticmethod
    def _cell(value: Any) -> str:
        if value is None:
            return ""
        encoded = to_jsonable(value)
        if isinstance(encoded, list) and len(encoded) == 2 and all(
            isinstance(p, float) for p in encoded
        ):
            text = str(complex(encoded[0], encoded[1]))
        else:
            text = str(encoded)
        return text if len(text) <= MAX_CELL else text[: MAX_CELL - 2] + ".."

    def _row(self, check: CheckResult) -> list:
        icon, colour = self._get_status_icon_and_colour(check.passed)
        return [
            self._format_text(icon, colour),
            check.name,
            self._cell(check.lhs),
            self._cell(check.rhs),
            self._cell(check.value),
            self._format_text(check.detail, self.config.report.muted_colour),
        ]

    def render(self, report: Report) -> Group:
        header = self.config.report.header_colour
        table = Table(title=report.command, title_style=Style(color=header, bold=True))
        for column in ("", "check", "lhs", "rhs", "value", "detail"):
            table.add_column(column, header_style=Style(color=header))
        for check in report.checks:
            table.add_row(*self._row(check))

        icon, colour = self._get_status_icon_and_colour(report.passed)
        failed = len(report.failures())
        verdict = (
            f"{icon} all {len(report.checks)} checks passed"
            if report.passed
            else f"{icon} {failed} of {len(report.checks)} checks failed"
        )
        return Group(table, self._format_text(verdict, colour))

    def print(self, report: Report, console: Optional[Console] = None) -> None:
        console = console or Console()
        console.print(self.render(report))
        self.logger.debug(f"Rendered {report.command} with {len(report.checks)} checks")
