"""Functional parameters alpha_nu(z) of the generalized model."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from glmn_norm.core.kernels import ONE, Grading, Kernels, f_graded, gamma
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalars import EPS, EpsRationalFunction, Scalar
from glmn_norm.utils.exceptions import (
    CardinalityMismatch,
    ColoringMismatch,
    DuplicateNode,
    KernelPole,
)


class AlphaFamily(ABC):
    """alpha_nu(z) for colors nu = 1..N, evaluable over every scalar field."""

    kind: str = ""

    @abstractmethod
    def evaluate(self, nu: int, z: Scalar) -> Scalar:
        """alpha_nu(z)."""

    def derivative(self, nu: int, z: Scalar) -> Scalar:
        """alpha'_nu(z), exact at rational points via the eps-field."""
        value = self.evaluate(nu, EPS.shift(z, Fraction(1)))
        if isinstance(value, EpsRationalFunction):
            return value.derivative_at_zero()
        return Fraction(0)

    def log_derivative(self, nu: int, z: Scalar) -> Scalar:
        return self.derivative(nu, z) / self.evaluate(nu, z)


class UnitAlpha(AlphaFamily):
    """alpha_nu = 1 for every color."""

    kind = "unit"

    def evaluate(self, nu: int, z: Scalar) -> Scalar:
        return ONE

    def derivative(self, nu: int, z: Scalar) -> Scalar:
        return Fraction(0)

    def log_derivative(self, nu: int, z: Scalar) -> Scalar:
        return Fraction(0)


class ProductAlpha(AlphaFamily):
    """alpha_mu(u) = prod_j f_[mu](u, xi^(mu)_j)."""

    kind = "product"

    def __init__(self, grading: Grading, xi: Sequence[Sequence[Scalar]]):
        if len(xi) != grading.N:
            raise ColoringMismatch(
                f"{grading} needs {grading.N} inhomogeneity lists, got {len(xi)}"
            )
        self.grading = grading
        self.xi: tuple[tuple[Scalar, ...], ...] = tuple(tuple(sites) for sites in xi)

    def evaluate(self, nu: int, z: Scalar) -> Scalar:
        self.grading.check_color(nu)
        result: Scalar = ONE
        for site in self.xi[nu - 1]:
            result = result * f_graded(self.grading, nu, z, site)
        return result

    def log_derivative(self, nu: int, z: Scalar) -> Scalar:
        """-sum_k c_[nu] / ((z - xi_k)(z - xi_k + c_[nu]))."""
        self.grading.check_color(nu)
        c_nu = self.grading.graded_c(nu)
        total: Scalar = Fraction(0)
        for site in self.xi[nu - 1]:
            d = z - site
            if d == 0 or d + c_nu == 0:
                raise KernelPole(
                    f"log-derivative of alpha_{nu} singular at {z}", pair=(z, site)
                )
            total = total - c_nu / (d * (d + c_nu))
        return total

    def derivative(self, nu: int, z: Scalar) -> Scalar:
        return self.evaluate(nu, z) * self.log_derivative(nu, z)


@dataclass(frozen=True)
class HermitePolynomial:
    """Polynomial with exact coefficients, lowest power first."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, z: Scalar) -> Scalar:
        acc: Scalar = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def derived(self) -> "HermitePolynomial":
        return HermitePolynomial(
            tuple(power * c for power, c in enumerate(self.coefficients) if power > 0)
        )

    def derivative(self, z: Scalar) -> Scalar:
        return self.derived().evaluate(z)


def hermite_fit(
    nodes: Sequence[Fraction],
    values: Sequence[Fraction],
    derivatives: Sequence[Fraction],
) -> HermitePolynomial:
    """Unique polynomial of degree <= 2r-1 matching values and first derivatives."""
    if not len(nodes) == len(values) == len(derivatives):
        raise CardinalityMismatch(
            f"{len(nodes)} nodes, {len(values)} values, {len(derivatives)} derivatives"
        )
    if len(set(nodes)) != len(nodes):
        raise DuplicateNode(f"Hermite nodes must be distinct: {list(map(str, nodes))}")

    z = [Fraction(x) for x in nodes for _ in range(2)]
    size = len(z)
    table = [[Fraction(0)] * size for _ in range(size)]
    for i, (value, slope) in enumerate(zip(values, derivatives)):
        table[2 * i][0] = Fraction(value)
        table[2 * i + 1][0] = Fraction(value)
        table[2 * i + 1][1] = Fraction(slope)
        if i > 0:
            table[2 * i][1] = (table[2 * i][0] - table[2 * i - 1][0]) / (
                z[2 * i] - z[2 * i - 1]
            )
    for col in range(2, size):
        for row in range(col, size):
            table[row][col] = (table[row][col - 1] - table[row - 1][col - 1]) / (
                z[row] - z[row - col]
            )

    # expand the Newton form into monomial coefficients
    coefficients = [Fraction(0)] * size
    basis = [Fraction(1)]
    for i in range(size):
        for power, b in enumerate(basis):
            coefficients[power] += table[i][i] * b
        shifted = [Fraction(0)] + basis
        for power, b in enumerate(basis):
            shifted[power] -= z[i] * b
        basis = shifted
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return HermitePolynomial(tuple(coefficients))


class HermiteAlpha(AlphaFamily):
    """One interpolating polynomial per color."""

    kind = "hermite"

    def __init__(self, polynomials: Sequence[HermitePolynomial]):
        self.polynomials = tuple(polynomials)

    @classmethod
    def fit(
        cls,
        nodes: Sequence[Sequence[Fraction]],
        values: Sequence[Sequence[Fraction]],
        derivatives: Sequence[Sequence[Fraction]],
    ) -> "HermiteAlpha":
        """Fit every color; colors without nodes get the constant 1."""
        polynomials = []
        for color_nodes, color_values, color_slopes in zip(nodes, values, derivatives):
            if color_nodes:
                polynomials.append(hermite_fit(color_nodes, color_values, color_slopes))
            else:
                polynomials.append(HermitePolynomial((Fraction(1),)))
        return cls(polynomials)

    def _polynomial(self, nu: int) -> HermitePolynomial:
        if not 1 <= nu <= len(self.polynomials):
            raise IndexOutOfRange(f"color {nu} outside 1..{len(self.polynomials)}")
        return self.polynomials[nu - 1]

    def evaluate(self, nu: int, z: Scalar) -> Scalar:
        return self._polynomial(nu).evaluate(z)

    def derivative(self, nu: int, z: Scalar) -> Scalar:
        return self._polynomial(nu).derivative(z)


class ModifiedAlpha(AlphaFamily):
    """alpha with the color mu excitation at ``pivot`` divided out.

    Colors mu, mu+1 and mu-1 pick up the kernel factors that make the reduced
    system on t without t^mu_j on-shell again; other colors are unchanged.
    """

    kind = "modified"

    def __init__(self, base: AlphaFamily, grading: Grading, mu: int, pivot: Scalar):
        grading.check_color(mu)
        self.base = base
        self.grading = grading
        self.mu = mu
        self.pivot = pivot

    def evaluate(self, nu: int, z: Scalar) -> Scalar:
        value = self.base.evaluate(nu, z)
        mu, grading = self.mu, self.grading
        if nu == mu:
            sign = -1 if mu == grading.m else 1
            return (
                sign
                * value
                * gamma(grading, mu, self.pivot, z)
                / gamma(grading, mu, z, self.pivot)
            )
        if nu == mu + 1:
            return value * f_graded(grading, mu + 1, z, self.pivot)
        if nu == mu - 1:
            return value / f_graded(grading, mu, self.pivot, z)
        return value


def bethe_rhs(grading: Grading, t: ColoredTuple, nu: int, j: int) -> Scalar:
    """Value alpha_nu(t^nu_j) must take for t to be on-shell."""
    grading.check_color(nu)
    k = Kernels(grading)
    t_j = t.entry(nu, j)
    rest = t.without(nu, j)
    sign = 1
    if nu == grading.m and (len(t.color(nu)) - 1) % 2 == 1:
        sign = -1
    numerator = k.prod(k.gamma(nu), (t_j,), rest) * k.prod(
        k.fg(nu + 1), t.color(nu + 1), (t_j,)
    )
    denominator = k.prod(k.gamma(nu), rest, (t_j,)) * k.prod(
        k.fg(nu), (t_j,), t.color(nu - 1)
    )
    return sign * numerator / denominator


def onshell_hermite(grading: Grading, t: ColoredTuple, x: ColoredTuple) -> HermiteAlpha:
    """Hermite family on-shell at t whose extracted X-values equal x."""
    t.check_grading(grading)
    if x.shape != t.shape:
        raise CardinalityMismatch(f"X shape {x.shape} differs from t shape {t.shape}")
    t.validate_distinct()
    values = []
    slopes = []
    for nu in range(1, grading.N + 1):
        c_next = grading.graded_c(nu + 1)
        color_values = [bethe_rhs(grading, t, nu, j) for j in range(1, len(t.color(nu)) + 1)]
        values.append(color_values)
        slopes.append([-xj * a / c_next for xj, a in zip(x.color(nu), color_values)])
    return HermiteAlpha.fit(t.colors, values, slopes)


def x_from_alpha(grading: Grading, t: ColoredTuple, alpha: AlphaFamily) -> ColoredTuple:
    """X^mu_j = -c_[mu+1] alpha'_mu(t^mu_j) / alpha_mu(t^mu_j)."""
    return ColoredTuple(
        tuple(
            tuple(
                -grading.graded_c(nu + 1) * alpha.log_derivative(nu, value)
                for value in t.color(nu)
            )
            for nu in range(1, grading.N + 1)
        )
    )


class EvaluationWeights:
    """Weights lambda_mu(u) of a tensor product of evaluation modules.

    ``sites[j-1]`` holds the inhomogeneities attached to the j-th fundamental
    weight, j = 1..N.
    """

    def __init__(self, grading: Grading, sites: Sequence[Sequence[Scalar]]):
        if len(sites) != grading.N:
            raise ColoringMismatch(f"{grading} needs {grading.N} site lists, got {len(sites)}")
        self.grading = grading
        self.sites = tuple(tuple(s) for s in sites)

    def weight(self, mu: int, u: Scalar) -> Scalar:
        """lambda_mu(u) = prod_{j >= mu} prod_k f_[mu](u, xi^(j)_k)."""
        self.grading.parity(mu)
        result: Scalar = ONE
        for sites in self.sites[mu - 1 :]:
            for site in sites:
                result = result * f_graded(self.grading, mu, u, site)
        return result

    def ratio(self, mu: int, u: Scalar) -> Scalar:
        return self.weight(mu, u) / self.weight(mu + 1, u)

    def product_alpha(self) -> ProductAlpha:
        return ProductAlpha(self.grading, self.sites)

    def compare_with_product_alpha(self, samples: Sequence[Scalar]) -> dict[int, bool]:
        """Per color, whether the weight ratio matches ProductAlpha on every sample."""
        family = self.product_alpha()
        return {
            mu: all(self.ratio(mu, u) == family.evaluate(mu, u) for u in samples)
            for mu in range(1, self.grading.N + 1)
        }


def evaluation_weights(grading: Grading, sites: Sequence[Sequence[Scalar]]) -> EvaluationWeights:
    return EvaluationWeights(grading, sites)
