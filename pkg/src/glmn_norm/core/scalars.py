"""Scalar fields the algebra is generic over.

Three kinds of scalars flow through the library:

* ``Fraction`` for exact rationals,
* ``EpsRationalFunction`` for rational functions of one formal regulator epsilon
  with exact rational coefficients,
* ``complex`` for floating point work in the Bethe solver.

Arithmetic is plain operator overloading. ``int`` and ``Fraction`` operands are
coerced into ``EpsRationalFunction`` when mixed with one, so the same kernel code
runs unchanged over every field. Polynomials in epsilon are elements of the
sympy ring QQ[eps]; the wrappers keep results in ``Fraction`` at the boundary.
"""

import cmath
import math
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable, Sequence, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from glmn_norm.utils.exceptions import DivisionByZero, PoleAtPoint, PoleAtZero

Coefficients = tuple[Fraction, ...]

EPS_RING, EPS_GEN = ring("eps", QQ)


def as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Convert an exact value to ``Fraction``, rejecting floats."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, (int, Fraction, str)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"Cannot interpret {value!r} as an exact rational")


def to_qq(value: Union[int, Fraction]) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


class EpsPolynomial:
    """Polynomial in epsilon with exact rational coefficients (lowest power first)."""

    __slots__ = ("poly",)

    def __init__(self, coefficients: Iterable[Union[int, Fraction]] = ()):
        dense = [to_qq(c) for c in coefficients]
        self.poly: PolyElement = EPS_RING.from_list(dense[::-1])

    @classmethod
    def _wrap(cls, poly: PolyElement) -> "EpsPolynomial":
        value = cls.__new__(cls)
        value.poly = poly
        return value

    @classmethod
    def constant(cls, value: Union[int, Fraction]) -> "EpsPolynomial":
        return cls._wrap(EPS_RING.ground_new(to_qq(value)))

    @classmethod
    def one(cls) -> "EpsPolynomial":
        return cls._wrap(EPS_RING.one)

    @classmethod
    def zero(cls) -> "EpsPolynomial":
        return cls._wrap(EPS_RING.zero)

    @property
    def coefficients(self) -> Coefficients:
        return tuple(from_qq(c) for c in reversed(self.poly.to_dense()))

    def is_zero(self) -> bool:
        return not self.poly

    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return -1 if self.is_zero() else self.poly.degree()

    @property
    def leading(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return from_qq(self.poly.LC)

    def coefficient(self, power: int) -> Fraction:
        if power < 0:
            return Fraction(0)
        return from_qq(self.poly.coeff(EPS_GEN**power))

    def __add__(self, other: "EpsPolynomial") -> "EpsPolynomial":
        return EpsPolynomial._wrap(self.poly + other.poly)

    def __neg__(self) -> "EpsPolynomial":
        return EpsPolynomial._wrap(-self.poly)

    def __sub__(self, other: "EpsPolynomial") -> "EpsPolynomial":
        return EpsPolynomial._wrap(self.poly - other.poly)

    def __mul__(self, other: "EpsPolynomial") -> "EpsPolynomial":
        return EpsPolynomial._wrap(self.poly * other.poly)

    def scale(self, factor: Fraction) -> "EpsPolynomial":
        return EpsPolynomial._wrap(self.poly.mul_ground(to_qq(factor)))

    def monic(self) -> "EpsPolynomial":
        if self.is_zero():
            return self
        return EpsPolynomial._wrap(self.poly.monic())

    def divmod(self, other: "EpsPolynomial") -> tuple["EpsPolynomial", "EpsPolynomial"]:
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        quotient, remainder = divmod(self.poly, other.poly)
        return EpsPolynomial._wrap(quotient), EpsPolynomial._wrap(remainder)

    def __floordiv__(self, other: "EpsPolynomial") -> "EpsPolynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "EpsPolynomial") -> "EpsPolynomial":
        return self.divmod(other)[1]

    def gcd(self, other: "EpsPolynomial") -> "EpsPolynomial":
        """Monic greatest common divisor, 1 when both are zero."""
        common = self.poly.gcd(other.poly)
        if not common:
            return EpsPolynomial.one()
        return EpsPolynomial._wrap(common.monic())

    def evaluate(self, x: Fraction) -> Fraction:
        return from_qq(self.poly(to_qq(x)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EpsPolynomial):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"EpsPolynomial({[str(c) for c in self.coefficients]})"

    def __str__(self) -> str:
        terms = []
        for power, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            elif power == 1:
                terms.append(f"{c}*eps")
            else:
                terms.append(f"{c}*eps^{power}")
        return " + ".join(terms) if terms else "0"


def _reduce(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    """Cancel common factors and make the denominator monic."""
    if not den:
        raise DivisionByZero("rational function with zero denominator")
    if not num:
        return EPS_RING.zero, EPS_RING.one
    p, q = num.cancel(den)
    lead = q.LC
    return p.quo_ground(lead), q.quo_ground(lead)


class EpsRationalFunction:
    """Reduced quotient of two ``EpsPolynomial``s with monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(
        self,
        numerator: Union[EpsPolynomial, int, Fraction],
        denominator: Union[EpsPolynomial, int, Fraction, None] = None,
    ):
        num = (
            numerator
            if isinstance(numerator, EpsPolynomial)
            else EpsPolynomial.constant(numerator)
        )
        if denominator is None:
            den = EpsPolynomial.one()
        elif isinstance(denominator, EpsPolynomial):
            den = denominator
        else:
            den = EpsPolynomial.constant(denominator)
        p, q = _reduce(num.poly, den.poly)
        self.numerator: EpsPolynomial = EpsPolynomial._wrap(p)
        self.denominator: EpsPolynomial = EpsPolynomial._wrap(q)

    @classmethod
    def _wrap(cls, num: EpsPolynomial, den: EpsPolynomial) -> "EpsRationalFunction":
        value = cls.__new__(cls)
        value.numerator = num
        value.denominator = den
        return value

    @classmethod
    def _from_polys(cls, num: PolyElement, den: PolyElement) -> "EpsRationalFunction":
        p, q = _reduce(num, den)
        return cls._wrap(EpsPolynomial._wrap(p), EpsPolynomial._wrap(q))

    @classmethod
    def constant(cls, value: Union[int, Fraction]) -> "EpsRationalFunction":
        return cls._wrap(EpsPolynomial.constant(value), EpsPolynomial.one())

    @classmethod
    def epsilon(cls) -> "EpsRationalFunction":
        return cls._wrap(EpsPolynomial._wrap(EPS_GEN), EpsPolynomial.one())

    @staticmethod
    def _coerce(other: object) -> "EpsRationalFunction | None":
        if isinstance(other, EpsRationalFunction):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return EpsRationalFunction.constant(other)
        return None

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_constant(self) -> bool:
        return self.numerator.degree() <= 0 and self.denominator.degree() == 0

    def __add__(self, other: object) -> "EpsRationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero():
            return self
        if self.is_zero():
            return rhs
        p, q = self.numerator.poly, self.denominator.poly
        r, s = rhs.numerator.poly, rhs.denominator.poly
        if q == s:
            return EpsRationalFunction._from_polys(p + r, q)
        return EpsRationalFunction._from_polys(p * s + r * q, q * s)

    __radd__ = __add__

    def __neg__(self) -> "EpsRationalFunction":
        return EpsRationalFunction._wrap(-self.numerator, self.denominator)

    def __sub__(self, other: object) -> "EpsRationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "EpsRationalFunction":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs + (-self)

    def __mul__(self, other: object) -> "EpsRationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return EpsRationalFunction._from_polys(
            self.numerator.poly * rhs.numerator.poly,
            self.denominator.poly * rhs.denominator.poly,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "EpsRationalFunction":
        if self.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return EpsRationalFunction._from_polys(self.denominator.poly, self.numerator.poly)

    def __truediv__(self, other: object) -> "EpsRationalFunction":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.reciprocal()

    def __rtruediv__(self, other: object) -> "EpsRationalFunction":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.reciprocal()

    def __pow__(self, exponent: int) -> "EpsRationalFunction":
        base = self if exponent >= 0 else self.reciprocal()
        result = EpsRationalFunction.constant(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.numerator == rhs.numerator and self.denominator == rhs.denominator

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.numerator.coefficient(0))
        return hash((self.numerator.coefficients, self.denominator.coefficients))

    def evaluate(self, x: Fraction) -> Fraction:
        den = self.denominator.evaluate(x)
        if den == 0:
            raise PoleAtPoint(f"{self} has a pole at eps = {x}")
        return self.numerator.evaluate(x) / den

    def limit_at_zero(self) -> Fraction:
        den = self.denominator.coefficient(0)
        if den == 0:
            raise PoleAtZero(f"{self} is singular at eps = 0")
        return self.numerator.coefficient(0) / den

    def derivative_at_zero(self) -> Fraction:
        """First-order Taylor coefficient at eps = 0."""
        q0 = self.denominator.coefficient(0)
        if q0 == 0:
            raise PoleAtZero(f"{self} is singular at eps = 0")
        p0 = self.numerator.coefficient(0)
        p1 = self.numerator.coefficient(1)
        q1 = self.denominator.coefficient(1)
        return (p1 * q0 - p0 * q1) / (q0 * q0)

    def log_derivative_at_zero(self) -> Fraction:
        value = self.limit_at_zero()
        if value == 0:
            raise DivisionByZero(f"logarithmic derivative of {self} at a zero")
        return self.derivative_at_zero() / value

    def __repr__(self) -> str:
        return f"EpsRationalFunction({self.numerator!r}, {self.denominator!r})"

    def __str__(self) -> str:
        if self.denominator == EpsPolynomial.one():
            return f"({self.numerator})"
        return f"({self.numerator})/({self.denominator})"


Scalar = Union[Fraction, EpsRationalFunction, complex]


def limit_at_zero(value: Scalar) -> Fraction:
    """Exact value at eps = 0; rational constants pass through."""
    if isinstance(value, EpsRationalFunction):
        return value.limit_at_zero()
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"limit_at_zero needs an exact scalar, got {type(value).__name__}")


def eval_eps(value: EpsRationalFunction, x: Union[int, Fraction]) -> Fraction:
    return value.evaluate(Fraction(x))


class ScalarField:
    """Common interface of the three scalar fields."""

    name: str = ""
    is_exact: bool = True

    def embed(self, value: Union[int, Fraction]) -> Scalar:
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        return self.embed(0)

    @property
    def one(self) -> Scalar:
        return self.embed(1)

    def close(self, a: Scalar, b: Scalar, rel_tol: float = 0.0) -> bool:
        return a == b

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class RationalField(ScalarField):
    name = "rational"

    def embed(self, value: Union[int, Fraction]) -> Fraction:
        return Fraction(value)


class EpsField(ScalarField):
    name = "eps"

    def embed(self, value: Union[int, Fraction]) -> EpsRationalFunction:
        return EpsRationalFunction.constant(Fraction(value))

    @property
    def epsilon(self) -> EpsRationalFunction:
        return EpsRationalFunction.epsilon()

    def shift(self, value: Union[int, Fraction], direction: Fraction) -> EpsRationalFunction:
        """``value + direction * eps``."""
        return EpsRationalFunction._wrap(
            EpsPolynomial((value, direction)), EpsPolynomial.one()
        )


class ComplexField(ScalarField):
    name = "complex"
    is_exact = False

    def embed(self, value: Union[int, Fraction, float, complex]) -> complex:
        z = complex(value)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"Non-finite complex value {z!r}")
        return z

    def close(self, a: Scalar, b: Scalar, rel_tol: float = 1e-9) -> bool:
        return cmath.isclose(complex(a), complex(b), rel_tol=rel_tol, abs_tol=rel_tol)


RATIONAL = RationalField()
EPS = EpsField()
COMPLEX = ComplexField()

FIELDS: dict[str, ScalarField] = {f.name: f for f in (RATIONAL, EPS, COMPLEX)}


def field_by_name(name: str) -> ScalarField:
    try:
        return FIELDS[name]
    except KeyError as e:
        raise ValueError(f"Unknown scalar field '{name}'") from e


def field_of(values: Sequence[Scalar]) -> ScalarField:
    """Smallest field containing every value."""
    if any(isinstance(v, complex) for v in values):
        return COMPLEX
    if any(isinstance(v, EpsRationalFunction) for v in values):
        return EPS
    return RATIONAL
