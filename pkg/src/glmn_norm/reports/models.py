from dataclasses import dataclass, field
from typing import Any, Optional

from glmn_norm.reports.codec import to_jsonable


@dataclass
class CheckResult:
    """One named comparison inside a report."""

    name: str
    passed: Optional[bool]
    lhs: Any = None
    rhs: Any = None
    value: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        result: dict[str, Any] = {"name": self.name, "passed": self.passed}
        for key in ("lhs", "rhs", "value"):
            item = getattr(self, key)
            if item is not None:
                result[key] = to_jsonable(item)
        if self.detail:
            result["detail"] = self.detail
        return result


@dataclass
class Report:
    """Outcome of one subcommand.

    ``passed`` is true iff every check with a verdict passed; checks whose
    verdict is None are informational.
    """

    command: str
    checks: list[CheckResult] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(check.passed is not False for check in self.checks)

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if check.passed is False]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "data": to_jsonable(self.data),
        }
