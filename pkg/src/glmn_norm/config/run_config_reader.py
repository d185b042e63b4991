"""Reader for the per-run JSON configuration given by ``--config``."""

import json
from dataclasses import dataclass
from fractions import Fraction
from logging import Logger
from pathlib import Path
from typing import Any, Optional, Union

from glmn_norm.core.alpha import (
    AlphaFamily,
    HermiteAlpha,
    ProductAlpha,
    UnitAlpha,
    onshell_hermite,
)
from glmn_norm.core.highest_coefficient import STRATEGIES
from glmn_norm.core.kernels import Grading
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalar_product import FORMULATIONS
from glmn_norm.reports.codec import parse_scalar
from glmn_norm.utils.exceptions import ConfigError

EXAMPLE = """{
  "grading": {"m": 1, "n": 1},
  "c": "1",
  "t": [["1/2", "3"]],
  "alpha": {"kind": "hermite", "x": [["5", "-2"]]}
}"""

FIELDS = ("rational", "complex")


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration; optional entries are None when absent."""

    grading: Grading
    field: str = "rational"
    t: Optional[ColoredTuple] = None
    s: Optional[ColoredTuple] = None
    x: Optional[ColoredTuple] = None
    kappa: Optional[ColoredTuple] = None
    xi: Optional[ColoredTuple] = None
    t0: Optional[ColoredTuple] = None
    alpha: Optional[AlphaFamily] = None
    mu: Optional[int] = None
    j: Optional[int] = None
    strategy: str = "first"
    pivot: int = 1
    formulation: str = "plain"
    tol: Optional[float] = None
    max_iter: Optional[int] = None
    seed: Optional[int] = None

    def require(self, name: str) -> Any:
        value = getattr(self, name)
        if value is None:
            raise ConfigError(f"'{name}' is required for this command")
        return value


class RunConfigReader:
    """Parses and validates a run configuration file"""

    def __init__(self, logger: Logger, path: Union[str, Path]):
        self.logger = logger
        self.path = Path(path)
        self._run_config: Optional[RunConfig] = None

    def _load(self) -> dict:
        if not self.path.exists():
            self.logger.error(f"Run config not found: {self.path}")
            raise ConfigError(
                f"Run config not found at {self.path}\n\n"
                f"Expected JSON format, for example:\n{EXAMPLE}"
            )
        try:
            with open(self.path, encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(
                f"Malformed JSON in {self.path} at line {e.lineno}, column {e.colno}: {e.msg}"
            ) from e
        if not isinstance(data, dict):
            raise ConfigError(f"{self.path} must hold a JSON object\n\n{EXAMPLE}")
        return data

    def get_run_config(self) -> RunConfig:
        """Get the validated run configuration"""
        if self._run_config is None:
            self._run_config = parse_run_config(self._load())
            self.logger.debug(f"Loaded run config from {self.path}")
        return self._run_config


def _grading(data: dict) -> Grading:
    raw = data.get("grading")
    if not isinstance(raw, dict) or "m" not in raw or "n" not in raw:
        raise ConfigError(f"'grading' must look like {{\"m\": 1, \"n\": 1}}, got {raw!r}")
    try:
        c = parse_scalar(data.get("c", "1"))
        return Grading(int(raw["m"]), int(raw["n"]), Fraction(c))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid grading or c: {e}") from e


def _colored(
    data: dict, name: str, grading: Grading, allow_complex: bool
) -> Optional[ColoredTuple]:
    raw = data.get(name)
    if raw is None:
        return None
    if not isinstance(raw, list) or not all(isinstance(color, list) for color in raw):
        raise ConfigError(f"'{name}' must be a list of per-color lists")
    if len(raw) != grading.N:
        raise ConfigError(f"'{name}' has {len(raw)} colors, {grading} needs {grading.N}")
    colors = []
    for nu, color in enumerate(raw, start=1):
        try:
            colors.append(tuple(parse_scalar(v, allow_complex) for v in color))
        except ValueError as e:
            raise ConfigError(f"'{name}' color {nu}: {e}") from e
    return ColoredTuple(tuple(colors))


def _same_shape(name: str, values: Optional[ColoredTuple], t: Optional[ColoredTuple]) -> None:
    if values is None or t is None:
        return
    for nu, (a, b) in enumerate(zip(values.shape, t.shape), start=1):
        if a != b:
            raise ConfigError(f"'{name}' color {nu} has {a} entries but 't' has {b}")


def _alpha(
    data: dict, grading: Grading, t: Optional[ColoredTuple], xi: Optional[ColoredTuple]
) -> Optional[AlphaFamily]:
    raw = data.get("alpha")
    if raw is None:
        return ProductAlpha(grading, xi.colors) if xi is not None else None
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ConfigError(f"'alpha' must be an object with a 'kind', got {raw!r}")
    kind = raw["kind"]
    try:
        if kind == "unit":
            return UnitAlpha()
        if kind == "product":
            sites = _colored(raw, "xi", grading, allow_complex=True)
            if sites is None:
                raise ConfigError("alpha of kind 'product' needs 'xi'")
            return ProductAlpha(grading, sites.colors)
        if kind == "hermite":
            if "x" in raw:
                if t is None:
                    raise ConfigError("alpha of kind 'hermite' with 'x' needs 't'")
                x = _colored(raw, "x", grading, allow_complex=False)
                _same_shape("alpha.x", x, t)
                return onshell_hermite(grading, t, x)  # type: ignore[arg-type]
            parts = [
                _colored(raw, key, grading, allow_complex=False)
                for key in ("nodes", "values", "derivatives")
            ]
            if any(part is None for part in parts):
                raise ConfigError(
                    "alpha of kind 'hermite' needs 'x' or all of 'nodes', 'values', 'derivatives'"
                )
            nodes, values, slopes = (part.colors for part in parts)  # type: ignore[union-attr]
            return HermiteAlpha.fit(nodes, values, slopes)
    except ValueError as e:
        raise ConfigError(f"Invalid alpha: {e}") from e
    raise ConfigError(f"Unknown alpha kind '{kind}', expected unit, product or hermite")


def _choice(data: dict, name: str, allowed: tuple[str, ...], default: str) -> str:
    value = data.get(name, default)
    if value not in allowed:
        raise ConfigError(f"'{name}' must be one of {', '.join(allowed)}, got {value!r}")
    return value


def _integer(data: dict, name: str) -> Optional[int]:
    value = data.get(name)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{name}' must be an integer, got {value!r}")
    return value


def parse_run_config(data: dict) -> RunConfig:
    """Validate a decoded JSON object into a RunConfig."""
    grading = _grading(data)
    field = _choice(data, "field", FIELDS, "rational")
    complex_data = field == "complex"

    t = _colored(data, "t", grading, complex_data)
    s = _colored(data, "s", grading, complex_data)
    x = _colored(data, "x", grading, complex_data)
    kappa = _colored(data, "kappa", grading, allow_complex=False)
    xi = _colored(data, "xi", grading, allow_complex=True)
    t0 = _colored(data, "t0", grading, allow_complex=True)
    for name, values in (("s", s), ("x", x), ("kappa", kappa)):
        _same_shape(name, values, t)

    pivot = _integer(data, "pivot")
    tol = data.get("tol")
    if tol is not None and (isinstance(tol, bool) or not isinstance(tol, (int, float))):
        raise ConfigError(f"'tol' must be a number, got {tol!r}")

    return RunConfig(
        grading=grading,
        field=field,
        t=t,
        s=s,
        x=x,
        kappa=kappa,
        xi=xi,
        t0=t0,
        alpha=_alpha(data, grading, t, xi),
        mu=_integer(data, "mu"),
        j=_integer(data, "j"),
        strategy=_choice(data, "strategy", STRATEGIES, "first"),
        pivot=1 if pivot is None else pivot,
        formulation=_choice(data, "formulation", FORMULATIONS, "plain"),
        tol=float(tol) if tol is not None else None,
        max_iter=_integer(data, "max_iter"),
        seed=_integer(data, "seed"),
    )
