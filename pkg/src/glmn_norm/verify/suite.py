"""The acceptance suite behind ``verify-all``."""

from fractions import Fraction
from logging import Logger
from typing import Optional

import numpy as np

from glmn_norm.config.config import Config
from glmn_norm.core.alpha import ProductAlpha, onshell_hermite
from glmn_norm.core.bethe_solver import BetheSolver
from glmn_norm.core.gaudin import (
    gaudin_det,
    gaudin_entry_by_derivative,
    gaudin_matrix,
    korepin_check,
    phi,
)
from glmn_norm.core.highest_coefficient import (
    PEEL_FIRST,
    PEEL_LAST,
    STRATEGIES,
    HCInstance,
    HighestCoefficient,
)
from glmn_norm.core.kernels import Grading
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalar_product import (
    HAT,
    PLAIN,
    NormInstance,
    ScalarProductCalculator,
    ScalarProductInstance,
)
from glmn_norm.reports.models import CheckResult, Report
from glmn_norm.verify.instances import InstanceGenerator, grid_gradings, grid_shapes

RESIDUE_GRADINGS = ((1, 1), (2, 1), (2, 2))
X_DERIVATIVE_CASES = (((1, 1), (2,)), ((2, 1), (1, 1)))
JACOBIAN_GRADINGS = ((2, 0), (1, 1), (2, 1))


def _label(grading: Grading, shape: tuple[int, ...]) -> str:
    return f"gl({grading.m}|{grading.n}) r={shape}"


class AcceptanceSuite:
    """Replays every identity of the theory on seeded random instances."""

    def __init__(
        self,
        logger: Logger,
        config: Config,
        threads: int = 1,
        seed: Optional[int] = None,
    ):
        self.logger = logger
        self.config = config
        self.settings = config.verify
        self.generator = InstanceGenerator(logger, self.settings, seed)
        self.hc = HighestCoefficient(logger, max_entries=self.settings.memo_size)
        self.calculator = ScalarProductCalculator(logger, self.hc, threads=threads)

    def _grid(self) -> list[tuple[Grading, tuple[int, ...]]]:
        return [
            (grading, shape)
            for grading in grid_gradings(self.settings.max_rank)
            for shape in grid_shapes(grading, self.settings.max_total_r)
        ]

    def _random_cases(self) -> list[tuple[Grading, tuple[int, ...]]]:
        grid = [case for case in self._grid() if sum(case[1]) > 0]
        count = self.settings.random_instances
        return [grid[i % len(grid)] for i in range(count)] if grid else []

    def run(self) -> Report:
        report = Report(
            "verify-all",
            data={
                "seed": self.generator.seed,
                "max_total_r": self.settings.max_total_r,
                "max_rank": self.settings.max_rank,
            },
        )
        for section in (
            self.norm_formula,
            self.residues,
            self.unit_alpha_sum,
            self.korepin,
            self.hc_cross_recursion,
            self.gaudin_entries,
            self.solver,
            self.x_derivative,
            self.formulations,
        ):
            for check in section():
                report.add(check)
                self.logger.info(f"{check.name}: {'pass' if check.passed else 'FAIL'}")
            stats = self.hc.memo_stats()
            self.logger.debug(
                f"{section.__name__}: memo hits={stats.hits} misses={stats.misses} "
                f"evictions={stats.evictions}"
            )
            self.hc.clear()
        return report

    def norm_formula(self) -> list[CheckResult]:
        checks = []
        for grading, shape in self._grid():
            t, x = self.generator.onshell(grading, shape)
            alpha = onshell_hermite(grading, t, x)
            lhs = self.calculator.normalized_norm(NormInstance(grading, t, alpha))
            rhs = gaudin_det(gaudin_matrix(grading, t, x))
            checks.append(
                CheckResult(f"norm = det G {_label(grading, shape)}", lhs == rhs, lhs=lhs, rhs=rhs)
            )
        return checks

    def residues(self) -> list[CheckResult]:
        checks = []
        for grading, shape in self._grid():
            if (grading.m, grading.n) not in RESIDUE_GRADINGS or max(shape) > 2:
                continue
            if sum(shape) == 0:
                continue
            s, t = self.generator.pair(grading, shape)
            for strategy in STRATEGIES:
                results = self.hc.residue_check_all(HCInstance(grading, s, t), strategy=strategy)
                failed = [r for r in results if not r.passed]
                checks.append(
                    CheckResult(
                        f"residues ({strategy}) {_label(grading, shape)}",
                        not failed,
                        detail=f"{len(results)} poles"
                        + (f", first failure at ({failed[0].color},{failed[0].index})" if failed else ""),
                    )
                )
        return checks

    def unit_alpha_sum(self) -> list[CheckResult]:
        checks = []
        for index, (grading, shape) in enumerate(self._random_cases()):
            s, t = self.generator.pair(grading, shape)
            value = self.calculator.prop_zero_sum(grading, s, t)
            checks.append(
                CheckResult(
                    f"alpha = 1 sum #{index} {_label(grading, shape)}", value == 0, value=value
                )
            )
        return checks

    def korepin(self) -> list[CheckResult]:
        checks = []
        for grading, shape in self._grid():
            t, x = self.generator.onshell(grading, shape)
            result = korepin_check(grading, t, x, self.logger)
            failed = [c.name for c in result.criteria if not c.passed]
            checks.append(
                CheckResult(
                    f"Korepin criteria {_label(grading, shape)}",
                    result.passed,
                    detail=f"failed: {', '.join(failed)}" if failed else "5 criteria",
                )
            )
        return checks

    def hc_cross_recursion(self) -> list[CheckResult]:
        checks = []
        for grading, shape in self._grid():
            s, t = self.generator.pair(grading, shape)
            inst = HCInstance(grading, s, t)
            reference = self.hc.z_eval(inst, PEEL_FIRST)
            values = [reference]
            for strategy, size in ((PEEL_FIRST, shape[0]), (PEEL_LAST, shape[-1])):
                for pivot in range(1, max(1, size) + 1):
                    values.append(self.hc.z_eval(inst, strategy, pivot))
            checks.append(
                CheckResult(
                    f"HC recursions agree {_label(grading, shape)}",
                    all(v == reference for v in values),
                    value=reference,
                    detail=f"{len(values) - 1} evaluations",
                )
            )
        return checks

    def gaudin_entries(self) -> list[CheckResult]:
        checks = []
        for grading, shape in self._grid():
            if sum(shape) == 0:
                continue
            t, x = self.generator.onshell(grading, shape)
            alpha = onshell_hermite(grading, t, x)
            matrix = gaudin_matrix(grading, t, x)
            mismatches = [
                (mu, j, nu, k)
                for mu, j in t.positions()
                for nu, k in t.positions()
                if gaudin_entry_by_derivative(grading, t, alpha, mu, j, nu, k)
                != matrix.entry(mu, j, nu, k)
            ]
            checks.append(
                CheckResult(
                    f"Gaudin entries by derivative {_label(grading, shape)}",
                    not mismatches,
                    detail=f"{matrix.size ** 2} entries"
                    + (f", first mismatch at {mismatches[0]}" if mismatches else ""),
                )
            )
        return checks

    def solver(self) -> list[CheckResult]:
        solver = BetheSolver(self.logger, self.config.solver)
        grading = Grading(2, 0, Fraction(2))
        alpha = ProductAlpha(grading, [[Fraction(0), Fraction(4)]])
        result = solver.solve_newton(grading, alpha, ColoredTuple.of([0.8]))
        root = result.t.entry(1, 1)
        exact_root = ColoredTuple.of([Fraction(1)])
        tail = [h for h in result.history if 0 < h < 1e-2]
        quadratic = all(b <= 10 * a * a + 1e-15 for a, b in zip(tail, tail[1:]))
        checks = [
            CheckResult(
                "Newton root gl(2|0) c=2 xi={0,4}",
                result.converged and result.iterations <= 10 and abs(root - 1) < 1e-9,
                lhs=root,
                rhs=Fraction(1),
                detail=f"{result.iterations} iterations, residual {result.residual_norm:.2e}",
            ),
            CheckResult(
                "Phi = 1 exactly at the rational root",
                phi(grading, exact_root, alpha, 1, 1) == 1,
            ),
            CheckResult(
                "quadratic convergence", quadratic, detail=f"tail {['%.1e' % h for h in tail]}"
            ),
        ]

        worst = 0.0
        for point in range(self.settings.jacobian_points):
            m, n = JACOBIAN_GRADINGS[point % len(JACOBIAN_GRADINGS)]
            grading = Grading(m, n)
            shape = tuple(1 for _ in range(grading.N))
            xi = self.generator.complex_point(tuple(2 for _ in range(grading.N)))
            family = ProductAlpha(grading, xi.colors)
            t = self.generator.complex_point(shape)
            analytic = solver.analytic_jacobian(grading, t, family)
            numeric = solver.finite_difference_jacobian(grading, t, family)
            scale = max(1.0, float(np.max(np.abs(analytic))))
            worst = max(worst, float(np.max(np.abs(analytic - numeric))) / scale)
        checks.append(
            CheckResult(
                "analytic vs finite-difference Jacobian",
                worst <= 1e-6,
                detail=f"{self.settings.jacobian_points} points, worst relative {worst:.1e}",
            )
        )
        return checks

    def x_derivative(self) -> list[CheckResult]:
        checks = []
        for (m, n), shape in X_DERIVATIVE_CASES:
            grading = Grading(m, n)
            t, x = self.generator.onshell(grading, shape)
            for mu, j in t.positions():
                result = self.calculator.x_derivative_check(grading, t, x, mu, j)
                checks.append(
                    CheckResult(
                        f"d norm / d X({mu},{j}) {_label(grading, shape)}",
                        result.passed,
                        lhs=result.lhs,
                        rhs=result.rhs,
                        detail=f"second difference {result.second_difference}",
                    )
                )
        return checks

    def formulations(self) -> list[CheckResult]:
        checks = []
        for index, (grading, shape) in enumerate(self._random_cases()):
            s, t = self.generator.pair(grading, shape)
            inst = ScalarProductInstance(grading, s, t, self.generator.polynomial_alpha(grading))
            plain = self.calculator.scalar_product(inst, PLAIN)
            hat = self.calculator.scalar_product(inst, HAT)
            checks.append(
                CheckResult(
                    f"plain = hat #{index} {_label(grading, shape)}",
                    plain == hat,
                    lhs=plain,
                    rhs=hat,
                )
            )
        return checks
