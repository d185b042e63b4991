"""Damped Newton solver for the Bethe equations of evaluation representations."""

from dataclasses import dataclass, field
from logging import Logger
from typing import Optional

import numpy as np

from glmn_norm.config.defaults import SolverConfig
from glmn_norm.core.alpha import AlphaFamily, x_from_alpha
from glmn_norm.core.gaudin import bethe_residual, gaudin_matrix, phi
from glmn_norm.core.kernels import Grading
from glmn_norm.core.partitions import ColoredTuple
from glmn_norm.core.scalars import COMPLEX
from glmn_norm.utils.exceptions import KernelPole, NonConvergence, SingularJacobian


def _flatten(t: ColoredTuple) -> np.ndarray:
    return np.array([value for _, _, value in t.flat()], dtype=complex)


def _unflatten(vector: np.ndarray, shape: tuple[int, ...]) -> ColoredTuple:
    colors = []
    offset = 0
    for size in shape:
        colors.append(tuple(complex(v) for v in vector[offset : offset + size]))
        offset += size
    return ColoredTuple(tuple(colors))


@dataclass
class SolveReport:
    t: ColoredTuple
    residual_norm: float
    iterations: int
    converged: bool
    history: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "t": [[[v.real, v.imag] for v in values] for values in self.t.colors],
            "residual_norm": self.residual_norm,
            "iterations": self.iterations,
            "converged": self.converged,
            "history": list(self.history),
        }


class BetheSolver:
    """Newton iteration on Phi - 1 with the Gaudin matrix as Jacobian."""

    def __init__(self, logger: Logger, settings: Optional[SolverConfig] = None):
        self.logger = logger
        self.settings = settings or SolverConfig()

    def residual_vector(self, grading: Grading, t: ColoredTuple, alpha: AlphaFamily) -> np.ndarray:
        return _flatten(bethe_residual(grading, t, alpha))

    def analytic_jacobian(
        self, grading: Grading, t: ColoredTuple, alpha: AlphaFamily
    ) -> np.ndarray:
        """d Phi^(mu)_j / d t^nu_k = -Phi^(mu)_j G^(mu,nu)_jk / c_[mu+1]."""
        x = x_from_alpha(grading, t, alpha)
        matrix = gaudin_matrix(grading, t, x)
        jacobian = np.array(matrix.as_rows(), dtype=complex)
        for row, (mu, j) in enumerate(t.positions()):
            value = complex(phi(grading, t, alpha, mu, j))
            jacobian[row, :] *= -value / complex(grading.graded_c(mu + 1))
        return jacobian

    def finite_difference_jacobian(
        self, grading: Grading, t: ColoredTuple, alpha: AlphaFamily
    ) -> np.ndarray:
        """Central differences with step 1e-6 * max(1, |t|) per column."""
        point = _flatten(t)
        size = len(point)
        jacobian = np.zeros((size, size), dtype=complex)
        for col in range(size):
            h = 1e-6 * max(1.0, abs(point[col]))
            forward = point.copy()
            backward = point.copy()
            forward[col] += h
            backward[col] -= h
            r_plus = self.residual_vector(grading, _unflatten(forward, t.shape), alpha)
            r_minus = self.residual_vector(grading, _unflatten(backward, t.shape), alpha)
            jacobian[:, col] = (r_plus - r_minus) / (2 * h)
        return jacobian

    def solve_newton(
        self,
        grading: Grading,
        alpha: AlphaFamily,
        t0: ColoredTuple,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
        strict: bool = False,
        damping: bool = True,
    ) -> SolveReport:
        tol = self.settings.tol if tol is None else tol
        max_iter = self.settings.max_iter if max_iter is None else max_iter
        t0.check_grading(grading)
        t = t0.map(COMPLEX.embed)
        point = _flatten(t)

        residual = self.residual_vector(grading, t, alpha)
        norm = float(np.max(np.abs(residual))) if residual.size else 0.0
        history = [norm]
        iterations = 0

        while norm > tol and iterations < max_iter:
            jacobian = self.analytic_jacobian(grading, t, alpha)
            try:
                step = np.linalg.solve(jacobian, -residual)
            except np.linalg.LinAlgError as e:
                raise SingularJacobian(
                    f"Gaudin Jacobian singular at iteration {iterations}"
                ) from e

            accepted = False
            pole: Optional[KernelPole] = None
            factor = 1.0
            halvings = self.settings.max_halvings if damping else 0
            for _ in range(halvings + 1):
                candidate = point + factor * step
                candidate_t = _unflatten(candidate, t.shape)
                try:
                    candidate_residual = self.residual_vector(grading, candidate_t, alpha)
                except KernelPole as e:
                    pole = e
                    factor /= 2
                    continue
                candidate_norm = float(np.max(np.abs(candidate_residual)))
                if candidate_norm < norm or not damping:
                    point, t = candidate, candidate_t
                    residual, norm = candidate_residual, candidate_norm
                    accepted = True
                    break
                factor /= 2

            if not accepted:
                if pole is not None:
                    raise KernelPole(
                        f"every damped step from iteration {iterations} hit a pole",
                        pair=pole.pair,
                    ) from pole
                self.logger.warning(f"Newton stalled at iteration {iterations}, |r|={norm:.3e}")
                break

            iterations += 1
            history.append(norm)
            self.logger.debug(f"Newton iteration {iterations}: |r|={norm:.3e} step factor={factor}")

        report = SolveReport(
            t=t,
            residual_norm=norm,
            iterations=iterations,
            converged=norm <= tol,
            history=history,
        )
        self.logger.info(
            f"solve_newton {grading}: converged={report.converged} "
            f"iterations={iterations} |r|={norm:.3e}"
        )
        if strict and not report.converged:
            raise NonConvergence(
                f"no root within {max_iter} iterations, residual {norm:.3e} > {tol:.1e}"
            )
        return report
