"""Sum formula for scalar products of Bethe vectors and the on-shell norm."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from logging import Logger
from typing import Optional

from glmn_norm.core.alpha import AlphaFamily, ModifiedAlpha, UnitAlpha, onshell_hermite
from glmn_norm.core.gaudin import bethe_residual, normalization, phi
from glmn_norm.core.highest_coefficient import HCInstance, HighestCoefficient
from glmn_norm.core.kernels import ONE, Grading, Kernels
from glmn_norm.core.partitions import (
    Bipartition,
    ColoredTuple,
    enumerate_matched_bipartitions,
)
from glmn_norm.core.scalars import EPS, Scalar, limit_at_zero
from glmn_norm.utils.exceptions import (
    ColoringMismatch,
    DuplicateNode,
    KernelPole,
    PoleAtZero,
)

PLAIN = "plain"
HAT = "hat"
FORMULATIONS = (PLAIN, HAT)


@dataclass(frozen=True)
class ScalarProductInstance:
    grading: Grading
    s: ColoredTuple
    t: ColoredTuple
    alpha: AlphaFamily

    def __post_init__(self) -> None:
        self.s.check_grading(self.grading)
        self.t.check_grading(self.grading)
        if self.s.shape != self.t.shape:
            raise ColoringMismatch(
                f"colorings {self.s.shape} and {self.t.shape} differ; the product vanishes"
            )


def default_kappa(t: ColoredTuple) -> ColoredTuple:
    """Regulator directions 1, 2, 3, ... in color-major order."""
    counter = iter(range(1, t.total + 1))
    return t.map(lambda _: Fraction(next(counter)))


@dataclass(frozen=True)
class NormInstance:
    grading: Grading
    t: ColoredTuple
    alpha: AlphaFamily
    kappa: Optional[ColoredTuple] = None
    directions: ColoredTuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.t.check_grading(self.grading)
        kappa = self.kappa if self.kappa is not None else default_kappa(self.t)
        if kappa.shape != self.t.shape:
            raise ColoringMismatch(f"kappa shape {kappa.shape} differs from {self.t.shape}")
        values = [value for _, _, value in kappa.flat()]
        if any(value == 0 for value in values):
            raise ValueError("regulator directions must be nonzero")
        if len(set(values)) != len(values):
            raise DuplicateNode("regulator directions must be pairwise distinct")
        object.__setattr__(self, "directions", kappa)


def hat_alpha(
    grading: Grading, values: ColoredTuple, alpha: AlphaFamily, nu: int, j: int
) -> Scalar:
    """alpha with the Bethe-equation kernels of its own set attached.

    This is the same expression as Phi^(nu)_j evaluated on ``values``.
    """
    return phi(grading, values, alpha, nu, j)


def modified_alpha(
    alpha: AlphaFamily, grading: Grading, mu: int, pivot: Scalar
) -> ModifiedAlpha:
    return ModifiedAlpha(alpha, grading, mu, pivot)


@dataclass(frozen=True)
class XDerivativeReport:
    color: int
    index: int
    lhs: Fraction
    rhs: Fraction
    raw_rhs: Fraction
    second_difference: Fraction
    reduced_onshell: bool

    @property
    def passed(self) -> bool:
        return (
            self.lhs == self.rhs == self.raw_rhs
            and self.second_difference == 0
            and self.reduced_onshell
        )


class ScalarProductCalculator:
    """Scalar products, alpha = 1 sums and norms over any scalar field."""

    def __init__(self, logger: Logger, hc: HighestCoefficient, threads: int = 1):
        self.logger = logger
        self.hc = hc
        self.threads = max(1, threads)

    def scalar_product(self, inst: ScalarProductInstance, formulation: str = PLAIN) -> Scalar:
        if formulation not in FORMULATIONS:
            raise ValueError(f"Unknown formulation '{formulation}'")
        pairs = list(
            enumerate(enumerate_matched_bipartitions(inst.s.shape, inst.t.shape))
        )
        if formulation == HAT:
            hats = (self._hat_values(inst, inst.s), self._hat_values(inst, inst.t))

            def term(item):
                return self._guarded(self._hat_term, inst, item, hats)

        else:

            def term(item):
                return self._guarded(self._plain_term, inst, item)

        if self.threads > 1 and len(pairs) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                terms = list(executor.map(term, pairs))
        else:
            terms = [term(item) for item in pairs]

        total: Scalar = Fraction(0)
        for value in terms:
            total = total + value
        self.logger.debug(
            f"scalar_product {inst.grading} shape={inst.t.shape} "
            f"formulation={formulation} terms={len(pairs)}"
        )
        return total

    @staticmethod
    def _guarded(fn, inst, item, *args) -> Scalar:
        index, (bs, bt) = item
        try:
            return fn(inst, bs, bt, *args)
        except KernelPole as e:
            raise KernelPole(
                str(e), pair=e.pair, context=f"bipartition #{index}"
            ) from e

    def _hat_values(
        self, inst: ScalarProductInstance, values: ColoredTuple
    ) -> tuple[tuple[Scalar, ...], ...]:
        return tuple(
            tuple(
                hat_alpha(inst.grading, values, inst.alpha, nu, j)
                for j in range(1, len(values.color(nu)) + 1)
            )
            for nu in range(1, values.N + 1)
        )

    def _plain_term(
        self, inst: ScalarProductInstance, bs: Bipartition, bt: Bipartition
    ) -> Scalar:
        grading, alpha = inst.grading, inst.alpha
        k = Kernels(grading)
        s_I, s_II = bs.split(inst.s)
        t_I, t_II = bt.split(inst.t)
        term: Scalar = ONE
        for nu in range(1, grading.N + 1):
            for value in s_I.color(nu) + t_II.color(nu):
                term = term * alpha.evaluate(nu, value)
            term = term * k.prod(k.gamma(nu), s_II.color(nu), s_I.color(nu))
            term = term * k.prod(k.gamma(nu), t_I.color(nu), t_II.color(nu))
        for nu in range(1, grading.N):
            term = term / (
                k.prod(k.fg(nu + 1), s_II.color(nu + 1), s_I.color(nu))
                * k.prod(k.fg(nu + 1), t_I.color(nu + 1), t_II.color(nu))
            )
        if term == 0:
            return term
        term = term * self.hc.z_eval(HCInstance(grading, s_I, t_I))
        return term * self.hc.z_eval(HCInstance(grading, t_II, s_II))

    def _hat_term(
        self,
        inst: ScalarProductInstance,
        bs: Bipartition,
        bt: Bipartition,
        hats: tuple,
    ) -> Scalar:
        grading = inst.grading
        hat_s, hat_t = hats
        k = Kernels(grading)
        s_I, s_II = bs.split(inst.s)
        t_I, t_II = bt.split(inst.t)
        term: Scalar = ONE
        for nu in range(1, grading.N + 1):
            for i in bs.first(nu):
                term = term * hat_s[nu - 1][i]
            for i in bt.second(nu):
                term = term * hat_t[nu - 1][i]
            term = term * k.prod(k.gamma(nu), s_I.color(nu), s_II.color(nu))
            term = term * k.prod(k.gamma(nu), t_II.color(nu), t_I.color(nu))
        for nu in range(1, grading.N):
            term = term / (
                k.prod(k.fg(nu + 1), s_I.color(nu + 1), s_II.color(nu))
                * k.prod(k.fg(nu + 1), t_II.color(nu + 1), t_I.color(nu))
            )
        if term == 0:
            return term
        term = term * self.hc.z_eval(HCInstance(grading, s_I, t_I))
        return term * self.hc.z_eval(HCInstance(grading, t_II, s_II))

    def prop_zero_sum(self, grading: Grading, s: ColoredTuple, t: ColoredTuple) -> Scalar:
        """The alpha = 1 sum; identically zero for a nonempty tuple."""
        if t.total == 0:
            raise ValueError("the alpha = 1 sum needs at least one Bethe parameter")
        return self.scalar_product(ScalarProductInstance(grading, s, t, UnitAlpha()))

    def norm_limit(self, inst: NormInstance) -> Fraction:
        """Exact limit of S(t + kappa*eps | t) as eps -> 0."""
        t = inst.t
        directions = inst.directions
        s_eps = ColoredTuple(
            tuple(
                tuple(
                    EPS.shift(value, Fraction(direction))
                    for value, direction in zip(t.color(nu), directions.color(nu))
                )
                for nu in range(1, t.N + 1)
            )
        )
        t_eps = t.map(EPS.embed)
        value = self.scalar_product(ScalarProductInstance(inst.grading, s_eps, t_eps, inst.alpha))
        try:
            limit = limit_at_zero(value)
        except PoleAtZero:
            self.logger.error(
                f"scalar product of {inst.grading} shape={t.shape} singular at s = t"
            )
            raise
        self.logger.debug(f"norm_limit {inst.grading} shape={t.shape}: {limit}")
        return limit

    def normalized_norm(self, inst: NormInstance) -> Fraction:
        return Fraction(self.norm_limit(inst) / normalization(inst.grading, inst.t))

    def vanishing_at_zero_x(self, grading: Grading, t: ColoredTuple) -> tuple[Fraction, Fraction]:
        """Norm at X = 0 and prod alpha(t) times the alpha-free limit; both vanish."""
        zero_x = t.map(lambda _: Fraction(0))
        alpha = onshell_hermite(grading, t, zero_x)
        norm = self.norm_limit(NormInstance(grading, t, alpha))
        alpha_product: Scalar = ONE
        for nu, _, value in t.flat():
            alpha_product = alpha_product * alpha.evaluate(nu, value)
        free = self.norm_limit(NormInstance(grading, t, UnitAlpha()))
        return norm, Fraction(alpha_product * free)

    def x_derivative_check(
        self, grading: Grading, t: ColoredTuple, x: ColoredTuple, mu: int, j: int
    ) -> XDerivativeReport:
        """d norm / d X^mu_j against the norm of the reduced, modified system."""
        x_j = x.entry(mu, j)
        norms = []
        for step in (0, 1, 2):
            alpha = onshell_hermite(grading, t, x.replace(mu, j, x_j + step))
            norms.append(self.norm_limit(NormInstance(grading, t, alpha)))
        lhs = norms[1] - norms[0]
        second_difference = norms[2] - 2 * norms[1] + norms[0]

        alpha = onshell_hermite(grading, t, x)
        k = Kernels(grading)
        t_j = t.entry(mu, j)
        rest = t.without(mu, j)
        gamma_in = k.prod(k.gamma(mu), rest, (t_j,))
        f_above = k.prod(k.fg(mu + 1), t.color(mu + 1), (t_j,))
        prefactor = (
            gamma_in
            * k.prod(k.gamma(mu), (t_j,), rest)
            / (f_above * k.prod(k.fg(mu), (t_j,), t.color(mu - 1)))
        )
        sign = -1 if mu == grading.m and (len(t.color(mu)) - 1) % 2 == 1 else 1
        raw_prefactor = sign * alpha.evaluate(mu, t_j) * (gamma_in / f_above) ** 2

        reduced_t = t.complement(mu, j)
        modified = modified_alpha(alpha, grading, mu, t_j)
        reduced_norm = self.norm_limit(NormInstance(grading, reduced_t, modified))
        residual = bethe_residual(grading, reduced_t, modified)
        onshell = all(value == 0 for _, _, value in residual.flat())

        report = XDerivativeReport(
            color=mu,
            index=j,
            lhs=Fraction(lhs),
            rhs=Fraction(prefactor * reduced_norm),
            raw_rhs=Fraction(raw_prefactor * reduced_norm),
            second_difference=Fraction(second_difference),
            reduced_onshell=onshell,
        )
        self.logger.debug(f"x_derivative_check ({mu},{j}) {grading}: {report}")
        return report
