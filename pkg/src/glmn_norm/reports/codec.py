"""JSON encoding of scalars: rationals as "p/q" (or "p"), complex as [re, im]."""

from fractions import Fraction
from typing import Any, Union

from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalars import EpsRationalFunction

JSONScalar = Union[str, list[float]]


def format_scalar(value: Any) -> JSONScalar:
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float):
        return [value, 0.0]
    if isinstance(value, EpsRationalFunction):
        if value.is_constant():
            return str(value.limit_at_zero())
        raise TypeError(f"eps-dependent value {value} has no JSON form")
    raise TypeError(f"cannot encode {type(value).__name__} as a scalar")


def parse_scalar(raw: Any, allow_complex: bool = False) -> Union[Fraction, complex]:
    """Inverse of format_scalar; floats and pairs are only accepted for complex data."""
    if isinstance(raw, bool):
        raise ValueError(f"expected a number, got {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except ValueError as e:
            raise ValueError(f"'{raw}' is not a rational of the form p/q") from e
    if allow_complex:
        if isinstance(raw, float):
            return complex(raw)
        if (
            isinstance(raw, list)
            and len(raw) == 2
            and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in raw)
        ):
            return complex(raw[0], raw[1])
    raise ValueError(
        f"expected a rational string like \"3/4\""
        + (" or a [re, im] pair" if allow_complex else "")
        + f", got {raw!r}"
    )


def format_colored(values: ColoredTuple) -> list[list[JSONScalar]]:
    return [[format_scalar(v) for v in color] for color in values.colors]


def to_jsonable(value: Any) -> Any:
    """Recursively encode scalars inside dicts, lists and ColoredTuples."""
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, ColoredTuple):
        return format_colored(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (int, float)):
        return value
    return format_scalar(value)
