"""Subcommand dispatch for the glmn-norm command line."""

from fractions import Fraction
from logging import Logger
from typing import Callable, Optional

from glmn_norm.config.config import Config
from glmn_norm.core.alpha import x_from_alpha
from glmn_norm.core.bethe_solver import BetheSolver
from glmn_norm.core.gaudin import (
    bethe_residual,
    gaudin_det,
    gaudin_matrix,
    korepin_check,
)
from glmn_norm.core.highest_coefficient import (
    PEEL_FIRST,
    PEEL_LAST,
    HCInstance,
    HighestCoefficient,
)
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalar_product import (
    HAT,
    PLAIN,
    NormInstance,
    ScalarProductCalculator,
    ScalarProductInstance,
)
from glmn_norm.core.scalars import COMPLEX, Scalar
from glmn_norm.reports.models import CheckResult, Report
from glmn_norm.utils.exceptions import ConfigError
from glmn_norm.verify.suite import AcceptanceSuite

COMMANDS = (
    "hc-eval",
    "scalar-product",
    "prop-zero",
    "norm-check",
    "gaudin-det",
    "korepin-check",
    "residue-check",
    "solve-bethe",
    "verify-all",
)


class GlmnNormApp:
    """Runs one subcommand against the loaded configuration and returns its Report."""

    def __init__(
        self,
        logger: Logger,
        config: Config,
        threads: int = 1,
        seed: Optional[int] = None,
    ):
        self.logger = logger
        self.config = config
        self.threads = threads
        self.seed = seed
        self.hc = HighestCoefficient(logger, max_entries=config.verify.memo_size)
        self.calculator = ScalarProductCalculator(logger, self.hc, threads=threads)
        self._handlers: dict[str, Callable[[], Report]] = {
            "hc-eval": self.hc_eval,
            "scalar-product": self.scalar_product,
            "prop-zero": self.prop_zero,
            "norm-check": self.norm_check,
            "gaudin-det": self.gaudin_det,
            "korepin-check": self.korepin_check,
            "residue-check": self.residue_check,
            "solve-bethe": self.solve_bethe,
            "verify-all": self.verify_all,
        }

    def run(self, command: str) -> Report:
        handler = self._handlers.get(command)
        if handler is None:
            raise ConfigError(f"Unknown command '{command}', expected one of {', '.join(COMMANDS)}")
        self.logger.info(f"Running {command}")
        report = handler()
        self.logger.info(
            f"Finished {command}: {'pass' if report.passed else 'FAIL'} "
            f"({len(report.checks)} checks)"
        )
        return report

    # helpers

    def _values(self, name: str) -> ColoredTuple:
        values: ColoredTuple = self.config.run.require(name)
        if self.config.run.field == "complex":
            return values.map(COMPLEX.embed)
        return values

    def _require_exact(self, command: str) -> None:
        if self.config.run.field != "rational":
            raise ConfigError(f"'{command}' takes exact limits and needs field 'rational'")

    def _same(self, a: Scalar, b: Scalar) -> bool:
        if isinstance(a, complex) or isinstance(b, complex):
            return COMPLEX.close(a, b, self.config.report.complex_rel_tol)
        return a == b

    def _is_zero(self, value: Scalar) -> bool:
        if isinstance(value, complex):
            return abs(value) <= self.config.report.complex_rel_tol
        return value == 0

    # subcommands

    def hc_eval(self) -> Report:
        run = self.config.run
        inst = HCInstance(run.grading, self._values("s"), self._values("t"))
        value = self.hc.z_eval(inst, run.strategy, run.pivot)
        other = PEEL_LAST if run.strategy == PEEL_FIRST else PEEL_FIRST
        cross = self.hc.z_eval(inst, other)
        report = Report("hc-eval", data={"grading": str(run.grading), "shape": list(inst.t.shape)})
        report.add(CheckResult("Z", None, value=value, detail=f"strategy={run.strategy} pivot={run.pivot}"))
        report.add(
            CheckResult(f"{run.strategy} == {other}", self._same(value, cross), lhs=value, rhs=cross)
        )
        stats = self.hc.memo_stats()
        self.logger.debug(f"memo hits={stats.hits} misses={stats.misses} entries={stats.entries}")
        return report

    def scalar_product(self) -> Report:
        run = self.config.run
        inst = ScalarProductInstance(
            run.grading, self._values("s"), self._values("t"), run.require("alpha")
        )
        value = self.calculator.scalar_product(inst, run.formulation)
        other = HAT if run.formulation == PLAIN else PLAIN
        cross = self.calculator.scalar_product(inst, other)
        report = Report("scalar-product", data={"grading": str(run.grading), "alpha": inst.alpha.kind})
        report.add(CheckResult("S", None, value=value, detail=f"formulation={run.formulation}"))
        report.add(
            CheckResult(f"{run.formulation} == {other}", self._same(value, cross), lhs=value, rhs=cross)
        )
        return report

    def prop_zero(self) -> Report:
        run = self.config.run
        value = self.calculator.prop_zero_sum(run.grading, self._values("s"), self._values("t"))
        report = Report("prop-zero", data={"grading": str(run.grading)})
        report.add(CheckResult("alpha = 1 sum vanishes", self._is_zero(value), value=value))
        return report

    def norm_check(self) -> Report:
        self._require_exact("norm-check")
        run = self.config.run
        t = run.require("t")
        alpha = run.require("alpha")
        inst = NormInstance(run.grading, t, alpha, run.kappa)
        x = run.x if run.x is not None else x_from_alpha(run.grading, t, alpha)
        residual = bethe_residual(run.grading, t, alpha)
        lhs = self.calculator.normalized_norm(inst)
        rhs = gaudin_det(gaudin_matrix(run.grading, t, x))
        report = Report("norm-check", data={"grading": str(run.grading), "x": x})
        report.add(
            CheckResult(
                "on-shell",
                all(v == 0 for _, _, v in residual.flat()),
                detail="Bethe residual of alpha at t",
            )
        )
        report.add(CheckResult("normalized norm == det G", lhs == rhs, lhs=lhs, rhs=rhs))
        return report

    def gaudin_det(self) -> Report:
        run = self.config.run
        t = self._values("t")
        if run.x is not None:
            x = self._values("x")
        else:
            x = x_from_alpha(run.grading, t, run.require("alpha"))
        matrix = gaudin_matrix(run.grading, t, x)
        value = gaudin_det(matrix)
        report = Report(
            "gaudin-det", data={"grading": str(run.grading), "size": matrix.size}
        )
        report.add(CheckResult("det G", None, value=value))
        return report

    def korepin_check(self) -> Report:
        self._require_exact("korepin-check")
        run = self.config.run
        result = korepin_check(run.grading, run.require("t"), run.require("x"), self.logger)
        report = Report("korepin-check", data={"grading": str(run.grading)})
        for criterion in result.criteria:
            report.add(CheckResult(criterion.name, criterion.passed, detail=criterion.detail))
        return report

    def residue_check(self) -> Report:
        self._require_exact("residue-check")
        run = self.config.run
        inst = HCInstance(run.grading, run.require("s"), run.require("t"))
        if run.mu is not None and run.j is not None:
            results = [self.hc.z_residue_check(inst, run.mu, run.j, run.strategy)]
        else:
            colors = [run.mu] if run.mu is not None else None
            results = self.hc.residue_check_all(inst, colors, run.strategy)
        report = Report(
            "residue-check", data={"grading": str(run.grading), "strategy": run.strategy}
        )
        for result in results:
            report.add(
                CheckResult(
                    f"residue ({result.color},{result.index})",
                    result.passed,
                    lhs=result.lhs,
                    rhs=result.rhs,
                )
            )
        return report

    def solve_bethe(self) -> Report:
        run = self.config.run
        alpha = run.require("alpha")
        solver = BetheSolver(self.logger, self.config.solver)
        result = solver.solve_newton(
            run.grading, alpha, run.require("t0"), tol=run.tol, max_iter=run.max_iter
        )
        tol = run.tol if run.tol is not None else self.config.solver.tol
        report = Report("solve-bethe", data=result.to_dict())
        report.add(
            CheckResult(
                "converged",
                result.converged,
                value=Fraction(result.iterations),
                detail=f"residual {result.residual_norm:.3e}, tol {tol:.1e}",
            )
        )
        return report

    def verify_all(self) -> Report:
        seed = self.seed
        if seed is None and self.config.run_config_path is not None:
            seed = self.config.run.seed
        suite = AcceptanceSuite(self.logger, self.config, threads=self.threads, seed=seed)
        return suite.run()
