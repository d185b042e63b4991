from dataclasses import dataclass
from typing import Optional


@dataclass
class SolverConfig:
    """Bethe solver configuration"""

    tol: float = 1e-12  # residual infinity-norm
    max_iter: int = 100
    max_halvings: int = 30  # backtracking budget per Newton step


@dataclass
class VerifyConfig:
    """Acceptance suite configuration"""

    max_total_r: int = 4  # largest r_1 + ... + r_N in the grids
    max_rank: int = 4  # largest m + n
    random_instances: int = 20
    seed: int = 0
    numerator_bound: int = 40
    denominator_bound: int = 7
    jacobian_points: int = 10
    memo_size: int = 200_000  # highest-coefficient memo entries kept


@dataclass
class ReportConfig:
    """Report rendering configuration"""

    complex_rel_tol: float = 1e-9
    pass_icon: str = "✔"  # Heavy check mark
    fail_icon: str = "✘"  # Heavy ballot X
    default_icon: str = "?"
    pass_colour: str = "#a6e3a1"  # Green
    fail_colour: str = "#f38ba8"  # Red
    header_colour: str = "#cba6f7"  # Mauve
    muted_colour: str = "#9399b2"  # Overlay2

    def icon(self, passed: Optional[bool]) -> str:
        """Get the status icon, the default one when there is no verdict."""
        if passed is None:
            return self.default_icon
        return self.pass_icon if passed else self.fail_icon

    def colour(self, passed: Optional[bool]) -> str:
        if passed is None:
            return self.muted_colour
        return self.pass_colour if passed else self.fail_colour
