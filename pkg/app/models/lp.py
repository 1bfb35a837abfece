# app/models/lp.py
import enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.config.setting import settings


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class LpProblem(BaseModel):
    """
    minimize objective @ x
    subject to eq_matrix @ x == eq_rhs, ineq_matrix @ x <= ineq_rhs, x >= 0
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    objective: np.ndarray
    eq_matrix: np.ndarray
    eq_rhs: np.ndarray
    ineq_matrix: np.ndarray
    ineq_rhs: np.ndarray
    variable_names: Optional[tuple[str, ...]] = None

    @property
    def n_vars(self) -> int:
        return int(np.asarray(self.objective).shape[0])

    @property
    def n_rows(self) -> int:
        return int(np.asarray(self.eq_rhs).shape[0] + np.asarray(self.ineq_rhs).shape[0])

    @classmethod
    def from_lists(cls, objective, eq_matrix=None, eq_rhs=None, ineq_matrix=None, ineq_rhs=None) -> "LpProblem":
        """Build a problem from nested lists; missing constraint blocks become empty"""
        c = np.asarray(objective, dtype=float)
        n = c.shape[0]

        def block(matrix, rhs):
            if matrix is None or len(matrix) == 0:
                return np.zeros((0, n)), np.zeros(0)
            return np.asarray(matrix, dtype=float), np.asarray(rhs, dtype=float)

        a_eq, b_eq = block(eq_matrix, eq_rhs)
        a_ub, b_ub = block(ineq_matrix, ineq_rhs)
        return cls(objective=c, eq_matrix=a_eq, eq_rhs=b_eq, ineq_matrix=a_ub, ineq_rhs=b_ub)


class LpOptions(BaseModel):
    """Simplex tolerances and iteration policy"""
    model_config = ConfigDict(frozen=True)

    pivot_tol: float = Field(default_factory=lambda: settings.LP_PIVOT_TOL, gt=0)
    feasibility_tol: float = Field(default_factory=lambda: settings.LP_FEASIBILITY_TOL, gt=0)
    bland_switch_factor: int = Field(default_factory=lambda: settings.LP_BLAND_SWITCH_FACTOR, ge=1)
    iteration_factor: int = Field(default_factory=lambda: settings.LP_ITERATION_FACTOR, ge=1)


class LpSolution(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: np.ndarray
    objective_value: float
    status: LpStatus
    iterations: int
    basis: tuple[int, ...] = ()

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class ResidualReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_eq_residual: float = 0.0
    max_ineq_violation: float = 0.0
    min_variable: float = 0.0

    def within(self, tol: float) -> bool:
        return self.max_eq_residual <= tol and self.max_ineq_violation <= tol and self.min_variable >= -tol
