"""Grading of gl(m|n) and the rational kernels built on it.

Colors and line indices are 1-based throughout.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from glmn_norm.core.scalars import Scalar
from glmn_norm.utils.exceptions import IndexOutOfRange, KernelPole

Kernel = Callable[[Scalar, Scalar], Scalar]

ONE = Fraction(1)


@dataclass(frozen=True)
class Grading:
    """The superalgebra gl(m|n) together with the coupling constant c."""

    m: int
    n: int
    c: Scalar = Fraction(1)

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValueError(f"m and n must be non-negative, got ({self.m}|{self.n})")
        if self.m + self.n < 2:
            raise ValueError(f"gl({self.m}|{self.n}) has no Bethe parameters")
        if self.c == 0:
            raise ValueError("coupling constant c must be nonzero")

    @property
    def N(self) -> int:
        """Number of colors."""
        return self.m + self.n - 1

    @property
    def rank(self) -> int:
        return self.m + self.n

    def parity(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"line index {i} outside 1..{self.rank}")
        return 0 if i <= self.m else 1

    def is_boson(self, i: int) -> bool:
        return self.parity(i) == 0

    def graded_c(self, i: int) -> Scalar:
        return self.c if self.parity(i) == 0 else -self.c

    def check_color(self, color: int) -> None:
        if not 1 <= color <= self.N:
            raise IndexOutOfRange(f"color {color} outside 1..{self.N}")

    def flipped(self) -> "Grading":
        """gl(n|m) with c replaced by -c."""
        return Grading(self.n, self.m, -self.c)

    def drop_first(self) -> "Grading":
        return Grading(self.m - 1, self.n, self.c)

    def drop_last(self) -> "Grading":
        if self.n > 0:
            return Grading(self.m, self.n - 1, self.c)
        return Grading(self.m - 1, 0, self.c)

    def __str__(self) -> str:
        return f"gl({self.m}|{self.n}), c={self.c}"


def _difference(u: Scalar, v: Scalar) -> Scalar:
    d = u - v
    if d == 0:
        raise KernelPole(f"kernel pole at u = v = {u}", pair=(u, v))
    return d


def g(grading: Grading, u: Scalar, v: Scalar) -> Scalar:
    return grading.c / _difference(u, v)


def f(grading: Grading, u: Scalar, v: Scalar) -> Scalar:
    d = _difference(u, v)
    return (d + grading.c) / d


def g_graded(grading: Grading, i: int, u: Scalar, v: Scalar) -> Scalar:
    return grading.graded_c(i) / _difference(u, v)


def f_graded(grading: Grading, i: int, u: Scalar, v: Scalar) -> Scalar:
    d = _difference(u, v)
    return (d + grading.graded_c(i)) / d


def gamma(grading: Grading, i: int, u: Scalar, v: Scalar) -> Scalar:
    """f(u,v) below m, g(u,v) at m, f(v,u) above m."""
    grading.check_color(i)
    if i == grading.m:
        return g_graded(grading, i, u, v)
    return f_graded(grading, i, u, v)


def kernel_k(grading: Grading, mu: int, x: Scalar, y: Scalar) -> Scalar:
    """2c^2 (1 - delta_{mu,m}) / ((x-y)^2 - c^2)."""
    if mu == grading.m:
        return Fraction(0)
    d = x - y
    denominator = d * d - grading.c * grading.c
    if denominator == 0:
        raise KernelPole(f"K_{mu} pole at x - y = +-c for ({x}, {y})", pair=(x, y))
    return 2 * grading.c * grading.c / denominator


def kernel_j(grading: Grading, i: int, x: Scalar, y: Scalar) -> Scalar:
    """c^2 / ((x-y)(x-y+c_[i]))."""
    d = _difference(x, y)
    shifted = d + grading.graded_c(i)
    if shifted == 0:
        raise KernelPole(f"J_[{i}] pole at x - y = -c_[{i}] for ({x}, {y})", pair=(x, y))
    return grading.c * grading.c / (d * shifted)


def set_product(kernel: Kernel, first: Iterable[Scalar], second: Iterable[Scalar]) -> Scalar:
    """Product of kernel(a, b) over all pairs; 1 when either set is empty."""
    second = tuple(second)
    result: Scalar = ONE
    for a in first:
        for b in second:
            result = result * kernel(a, b)
    return result


def left_product(kernel: Kernel, x: Scalar, values: Iterable[Scalar]) -> Scalar:
    return set_product(kernel, (x,), values)


def right_product(kernel: Kernel, values: Iterable[Scalar], y: Scalar) -> Scalar:
    return set_product(kernel, values, (y,))


class Kernels:
    """Kernel functions bound to one grading.

    The scalar-product and highest-coefficient formulas are long products of
    graded kernels over sets, so the bound form keeps them readable::

        k = Kernels(grading)
        k.prod(k.fg(2), s2, s1)   # f_[2](s2, s1)
    """

    def __init__(self, grading: Grading):
        self.grading = grading

    def g(self, u: Scalar, v: Scalar) -> Scalar:
        return g(self.grading, u, v)

    def f(self, u: Scalar, v: Scalar) -> Scalar:
        return f(self.grading, u, v)

    def gg(self, i: int) -> Kernel:
        return lambda u, v: g_graded(self.grading, i, u, v)

    def fg(self, i: int) -> Kernel:
        return lambda u, v: f_graded(self.grading, i, u, v)

    def gamma(self, i: int) -> Kernel:
        return lambda u, v: gamma(self.grading, i, u, v)

    @staticmethod
    def prod(kernel: Kernel, first: Iterable[Scalar], second: Iterable[Scalar]) -> Scalar:
        return set_product(kernel, first, second)
