"""Seeded random instances that stay clear of every kernel pole."""

import random
from fractions import Fraction
from itertools import combinations
from logging import Logger
from typing import Iterable, Optional

from glmn_norm.config.defaults import VerifyConfig
from glmn_norm.core.alpha import HermiteAlpha, HermitePolynomial
from glmn_norm.core.kernels import Grading
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.utils.exceptions import InternalError

GRADINGS: tuple[tuple[int, int], ...] = ((1, 1), (2, 1), (1, 2), (2, 2), (3, 0))
PATTERNS: tuple[tuple[int, ...], ...] = ((1,), (2,), (1, 1), (2, 1), (1, 2), (1, 1, 1))

MAX_ATTEMPTS = 10_000


def grid_shapes(grading: Grading, max_total_r: int) -> list[tuple[int, ...]]:
    """Cardinality patterns spread over the colors, empty colors anywhere.

    The nonzero sizes of every shape read the pattern in order, so (1, 1) on
    three colors gives (1, 1, 0), (1, 0, 1) and (0, 1, 1).
    """
    shapes = []
    for pattern in PATTERNS:
        if len(pattern) > grading.N or sum(pattern) > max_total_r:
            continue
        for colors in combinations(range(grading.N), len(pattern)):
            shape = [0] * grading.N
            for color, size in zip(colors, pattern):
                shape[color] = size
            if tuple(shape) not in shapes:
                shapes.append(tuple(shape))
    return shapes


def grid_gradings(max_rank: int, c: Fraction = Fraction(1)) -> list[Grading]:
    return [Grading(m, n, c) for m, n in GRADINGS if m + n <= max_rank]


class InstanceGenerator:
    """Random rationals p/q with bounded p and q from a private seeded RNG.

    Parameters drawn into one pool keep every pairwise difference away from
    0, +-c and +-2c, so no f, g, K or J kernel of the pool can blow up or vanish.
    """

    def __init__(self, logger: Logger, settings: VerifyConfig, seed: Optional[int] = None):
        self.logger = logger
        self.settings = settings
        self.seed = settings.seed if seed is None else seed
        self.random = random.Random(self.seed)

    def rational(self) -> Fraction:
        bound = self.settings.numerator_bound
        return Fraction(
            self.random.randint(-bound, bound),
            self.random.randint(1, self.settings.denominator_bound),
        )

    def _clear_of(self, value: Fraction, taken: Iterable[Fraction], c: Fraction) -> bool:
        forbidden = (0, c, -c, 2 * c, -2 * c)
        return all(value - other not in forbidden for other in taken)

    def pool(self, grading: Grading, count: int, taken: Iterable[Fraction] = ()) -> list[Fraction]:
        values = list(taken)
        fresh: list[Fraction] = []
        for _ in range(MAX_ATTEMPTS):
            if len(fresh) == count:
                return fresh
            candidate = self.rational()
            if self._clear_of(candidate, values, grading.c):
                values.append(candidate)
                fresh.append(candidate)
        if len(fresh) == count:
            return fresh
        raise InternalError(
            f"could not draw {count} separated rationals; raise numerator_bound"
        )

    def colored(
        self, grading: Grading, shape: tuple[int, ...], taken: Iterable[Fraction] = ()
    ) -> ColoredTuple:
        values = iter(self.pool(grading, sum(shape), taken))
        return ColoredTuple(tuple(tuple(next(values) for _ in range(r)) for r in shape))

    def x_values(self, shape: tuple[int, ...]) -> ColoredTuple:
        return ColoredTuple(tuple(tuple(self.rational() for _ in range(r)) for r in shape))

    def onshell(self, grading: Grading, shape: tuple[int, ...]) -> tuple[ColoredTuple, ColoredTuple]:
        """Bethe parameters t and X-values for an on-shell Hermite family."""
        return self.colored(grading, shape), self.x_values(shape)

    def pair(self, grading: Grading, shape: tuple[int, ...]) -> tuple[ColoredTuple, ColoredTuple]:
        """Two tuples s, t of the same coloring drawn from one separated pool."""
        t = self.colored(grading, shape)
        s = self.colored(grading, shape, taken=[v for _, _, v in t.flat()])
        return s, t

    def polynomial_alpha(self, grading: Grading, degree: int = 2) -> HermiteAlpha:
        """Random polynomial alpha per color; polynomials have no poles anywhere."""
        return HermiteAlpha(
            [
                HermitePolynomial(tuple(self.rational() for _ in range(degree + 1)))
                for _ in range(grading.N)
            ]
        )

    def complex_point(self, shape: tuple[int, ...]) -> ColoredTuple:
        return ColoredTuple(
            tuple(
                tuple(
                    complex(self.random.uniform(-3, 3), self.random.uniform(-3, 3))
                    for _ in range(r)
                )
                for r in shape
            )
        )
