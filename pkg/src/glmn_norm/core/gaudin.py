"""Bethe equations, the Gaudin matrix and its determinant."""

from dataclasses import dataclass, field
from fractions import Fraction
from logging import Logger, getLogger
from typing import Optional

from glmn_norm.core.alpha import AlphaFamily
from glmn_norm.core.determinant import determinant
from glmn_norm.core.kernels import Grading, Kernels, kernel_j, kernel_k
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalars import EPS, EpsRationalFunction, Scalar
from glmn_norm.utils.exceptions import CardinalityMismatch, IndexOutOfRange


def phi(grading: Grading, t: ColoredTuple, alpha: AlphaFamily, mu: int, j: int) -> Scalar:
    """Phi^(mu)_j; the Bethe equations read Phi = 1."""
    grading.check_color(mu)
    k = Kernels(grading)
    t_j = t.entry(mu, j)
    rest = t.without(mu, j)
    sign = 1
    if mu == grading.m and (len(t.color(mu)) - 1) % 2 == 1:
        sign = -1
    numerator = alpha.evaluate(mu, t_j) * k.prod(k.gamma(mu), rest, (t_j,))
    numerator = numerator * k.prod(k.fg(mu), (t_j,), t.color(mu - 1))
    denominator = k.prod(k.gamma(mu), (t_j,), rest) * k.prod(
        k.fg(mu + 1), t.color(mu + 1), (t_j,)
    )
    return sign * numerator / denominator


def bethe_residual(grading: Grading, t: ColoredTuple, alpha: AlphaFamily) -> ColoredTuple:
    """Phi^(nu)_j - 1 for every parameter."""
    return ColoredTuple(
        tuple(
            tuple(phi(grading, t, alpha, nu, j) - 1 for j in range(1, len(values) + 1))
            for nu, values in enumerate(t.colors, start=1)
        )
    )


@dataclass(frozen=True)
class GaudinMatrix:
    """Block matrix G^(mu,nu) flattened in color-major order."""

    grading: Grading
    t: ColoredTuple
    x: ColoredTuple
    entries: tuple[tuple[Scalar, ...], ...]
    _offsets: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        offsets = [0]
        for size in self.t.shape:
            offsets.append(offsets[-1] + size)
        object.__setattr__(self, "_offsets", tuple(offsets))

    @property
    def size(self) -> int:
        return len(self.entries)

    def index(self, mu: int, j: int) -> int:
        if not 1 <= mu <= self.t.N or not 1 <= j <= self.t.shape[mu - 1]:
            raise IndexOutOfRange(f"no Gaudin row for ({mu}, {j})")
        return self._offsets[mu - 1] + j - 1

    def entry(self, mu: int, j: int, nu: int, k: int) -> Scalar:
        return self.entries[self.index(mu, j)][self.index(nu, k)]

    def block(self, mu: int, nu: int) -> tuple[tuple[Scalar, ...], ...]:
        rows = range(self._offsets[mu - 1], self._offsets[mu])
        cols = range(self._offsets[nu - 1], self._offsets[nu])
        return tuple(tuple(self.entries[r][c] for c in cols) for r in rows)

    def row_sums(self) -> list[Scalar]:
        return [sum(row, Fraction(0)) for row in self.entries]

    def as_rows(self) -> list[list[Scalar]]:
        return [list(row) for row in self.entries]


def gaudin_matrix(grading: Grading, t: ColoredTuple, x: ColoredTuple) -> GaudinMatrix:
    """Explicit Gaudin matrix with X taken as independent data."""
    t.check_grading(grading)
    if x.shape != t.shape:
        raise CardinalityMismatch(f"X shape {x.shape} differs from t shape {t.shape}")
    t.validate_distinct()
    positions = t.positions()
    flat_index = {pos: i for i, pos in enumerate(positions)}
    size = len(positions)
    rows: list[list[Scalar]] = [[Fraction(0)] * size for _ in range(size)]

    for mu, j in positions:
        row = rows[flat_index[(mu, j)]]
        t_j = t.entry(mu, j)
        same = t.color(mu)
        below = t.color(mu - 1)
        above = t.color(mu + 1)
        lower_sign = -1 if mu == grading.m else 1

        diagonal = x.entry(mu, j)
        diagonal = diagonal - sum((kernel_k(grading, mu, t_j, v) for v in same), Fraction(0))
        diagonal = diagonal + lower_sign * sum(
            (kernel_j(grading, mu, t_j, v) for v in below), Fraction(0)
        )
        diagonal = diagonal + sum(
            (kernel_j(grading, mu + 1, v, t_j) for v in above), Fraction(0)
        )
        row[flat_index[(mu, j)]] = diagonal

        for k, v in enumerate(same, start=1):
            col = flat_index[(mu, k)]
            row[col] = row[col] + kernel_k(grading, mu, t_j, v)
        for k, v in enumerate(below, start=1):
            row[flat_index[(mu - 1, k)]] = -lower_sign * kernel_j(grading, mu, t_j, v)
        for k, v in enumerate(above, start=1):
            row[flat_index[(mu + 1, k)]] = -kernel_j(grading, mu + 1, v, t_j)

    return GaudinMatrix(grading, t, x, tuple(tuple(r) for r in rows))


def gaudin_entry_by_derivative(
    grading: Grading,
    t: ColoredTuple,
    alpha: AlphaFamily,
    mu: int,
    j: int,
    nu: int,
    k: int,
) -> Fraction:
    """-c_[mu+1] d log Phi^(mu)_j / d t^nu_k, exact through the eps-field."""
    t.entry(nu, k)
    shifted = t.map(EPS.embed).replace(nu, k, EPS.shift(t.entry(nu, k), Fraction(1)))
    value = phi(grading, shifted, alpha, mu, j)
    if not isinstance(value, EpsRationalFunction):
        value = EPS.embed(value)
    return -grading.graded_c(mu + 1) * value.log_derivative_at_zero()


def gaudin_det(matrix: GaudinMatrix) -> Scalar:
    return determinant(matrix.entries)


def normalization(grading: Grading, t: ColoredTuple) -> Scalar:
    """prod gamma_nu(t_p, t_q) over p != q divided by prod f_[nu+1](t^{nu+1}, t^nu)."""
    k = Kernels(grading)
    result: Scalar = Fraction(1)
    for nu in range(1, grading.N + 1):
        values = t.color(nu)
        for p, a in enumerate(values):
            for q, b in enumerate(values):
                if p != q:
                    result = result * k.gamma(nu)(a, b)
    for nu in range(1, grading.N):
        result = result / k.prod(k.fg(nu + 1), t.color(nu + 1), t.color(nu))
    return result


def norm_rhs(grading: Grading, t: ColoredTuple, x: ColoredTuple) -> Scalar:
    return normalization(grading, t) * gaudin_det(gaudin_matrix(grading, t, x))


def modified_x(grading: Grading, t: ColoredTuple, x: ColoredTuple, mu: int, j: int) -> ColoredTuple:
    """X on t without t^mu_j so that the reduced determinant is the (mu,j) minor."""
    t_j = t.entry(mu, j)
    colors = []
    for nu in range(1, grading.N + 1):
        values = list(x.color(nu))
        params = t.color(nu)
        if nu == mu:
            values = [
                xv - kernel_k(grading, mu, t_j, tv)
                for i, (xv, tv) in enumerate(zip(values, params), start=1)
                if i != j
            ]
        elif nu == mu + 1:
            sign = -1 if grading.m == mu + 1 else 1
            values = [
                xv + sign * kernel_j(grading, mu + 1, tv, t_j)
                for xv, tv in zip(values, params)
            ]
        elif nu == mu - 1:
            values = [xv + kernel_j(grading, mu, t_j, tv) for xv, tv in zip(values, params)]
        colors.append(tuple(values))
    return ColoredTuple(tuple(colors))


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str


@dataclass
class KorepinReport:
    criteria: list[CriterionResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)


class KorepinChecker:
    """Exact replay of the five Korepin criteria on det G."""

    def __init__(self, logger: Logger):
        self.logger = logger

    def _det(self, grading: Grading, t: ColoredTuple, x: ColoredTuple) -> Scalar:
        return gaudin_det(gaudin_matrix(grading, t, x))

    def check(self, grading: Grading, t: ColoredTuple, x: ColoredTuple) -> KorepinReport:
        base = self._det(grading, t, x)
        positions = t.positions()
        criteria = [
            self._symmetry(grading, t, x, base),
            self._affine(grading, t, x, positions),
            self._single_parameter(grading, t, x, positions),
            self._coefficient_recursion(grading, t, x, positions, base),
            self._vanishing(grading, t, x),
        ]
        report = KorepinReport(criteria)
        self.logger.info(
            f"Korepin criteria {grading} shape={t.shape}: "
            + ", ".join(f"{c.name}={'pass' if c.passed else 'FAIL'}" for c in criteria)
        )
        return report

    def _symmetry(self, grading, t, x, base) -> CriterionResult:
        swaps = 0
        for nu, values in enumerate(t.colors, start=1):
            for a in range(1, len(values) + 1):
                for b in range(a + 1, len(values) + 1):
                    t_swapped = t.replace(nu, a, t.entry(nu, b)).replace(nu, b, t.entry(nu, a))
                    x_swapped = x.replace(nu, a, x.entry(nu, b)).replace(nu, b, x.entry(nu, a))
                    swaps += 1
                    if self._det(grading, t_swapped, x_swapped) != base:
                        return CriterionResult(
                            "symmetry", False, f"det changes under swap ({nu}:{a}<->{b})"
                        )
        return CriterionResult("symmetry", True, f"{swaps} swaps")

    def _affine(self, grading, t, x, positions) -> CriterionResult:
        for mu, j in positions:
            xj = x.entry(mu, j)
            d0, d1, d2 = (
                self._det(grading, t, x.replace(mu, j, xj + step)) for step in (0, 1, 2)
            )
            if d2 - 2 * d1 + d0 != 0:
                return CriterionResult(
                    "affine", False, f"nonzero second difference in X({mu},{j})"
                )
        return CriterionResult("affine", True, f"{len(positions)} variables")

    def _single_parameter(self, grading, t, x, positions) -> CriterionResult:
        for mu, j in positions:
            empty = [()] * grading.N
            t_single = ColoredTuple(tuple(empty)).with_color(mu, (t.entry(mu, j),))
            x_single = ColoredTuple(tuple(empty)).with_color(mu, (x.entry(mu, j),))
            if self._det(grading, t_single, x_single) != x.entry(mu, j):
                return CriterionResult("single", False, f"det != X for ({mu},{j}) alone")
        return CriterionResult("single", True, "det = X at r = 1")

    def _coefficient_recursion(self, grading, t, x, positions, base) -> CriterionResult:
        for mu, j in positions:
            xj = x.entry(mu, j)
            coefficient = self._det(grading, t, x.replace(mu, j, xj + 1)) - base
            reduced = self._det(
                grading, t.complement(mu, j), modified_x(grading, t, x, mu, j)
            )
            if coefficient != reduced:
                return CriterionResult(
                    "recursion",
                    False,
                    f"d det / d X({mu},{j}) = {coefficient}, reduced det = {reduced}",
                )
        return CriterionResult("recursion", True, f"{len(positions)} coefficients")

    def _vanishing(self, grading, t, x) -> CriterionResult:
        zero_x = x.map(lambda _: Fraction(0))
        value = self._det(grading, t, zero_x)
        return CriterionResult("vanishing", value == 0, f"det at X = 0 is {value}")


def korepin_check(
    grading: Grading, t: ColoredTuple, x: ColoredTuple, logger: Optional[Logger] = None
) -> KorepinReport:
    return KorepinChecker(logger or getLogger("glmn_norm")).check(grading, t, x)
