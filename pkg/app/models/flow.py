# app/models/flow.py
import enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class ObjectiveKind(str, enum.Enum):
    MAX_LIFETIME = "max_lifetime"
    MIN_TOTAL_POWER = "min_total_power"


class NodeFlow(BaseModel):
    """Direct / stepwise / other decomposition of one node's outflow"""
    model_config = ConfigDict(frozen=True)

    j: int
    direct_info: float
    stepwise_info: float
    other_info: float
    direct_power: float
    stepwise_power: float
    other_power: float
    capacity: float

    @property
    def total_info(self) -> float:
        return self.direct_info + self.stepwise_info + self.other_info

    @property
    def total_power(self) -> float:
        return self.direct_power + self.stepwise_power + self.other_power

    @property
    def depletion_rate(self) -> float:
        return self.total_power / self.capacity

    @property
    def depl_direct(self) -> float:
        return self.direct_power / self.capacity

    @property
    def depl_stepwise(self) -> float:
        return self.stepwise_power / self.capacity


class FlowSolution(BaseModel):
    """
    Solved flow schedule. x[i, j] is the information rate from node j to node i;
    row/column 0 is the sink and column 0 is always zero.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: np.ndarray
    phi: float = Field(..., ge=0.0, description="System depletion rate")
    per_node: tuple[NodeFlow, ...]
    objective_kind: ObjectiveKind
    total_power: float
    total_info: float = Field(..., ge=0.0, description="Sum of node information rates")
    iterations: int = 0

    @property
    def n(self) -> int:
        return self.x.shape[0] - 1

    @property
    def lifetime(self) -> float:
        return 1.0 / self.phi if self.phi > 0 else float("inf")


class StructureReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    is_direct_stepwise_only: bool
    max_other_mass: float
    tol: float


class ObjectiveComparison(BaseModel):
    """Max-lifetime vs min-total-power schedules of the same profile"""
    model_config = ConfigDict(frozen=True)

    phi_max_lifetime: float
    phi_min_power: float
    power_max_lifetime: float
    power_min_power: float

    @property
    def lifetime_gain(self) -> float:
        """How many times longer the max-lifetime schedule lasts"""
        return self.phi_min_power / self.phi_max_lifetime

    @property
    def power_overhead(self) -> float:
        return self.power_max_lifetime / self.power_min_power - 1.0


class FlowCheck(BaseModel):
    """Conservation and sink-balance residuals of a flow matrix"""
    model_config = ConfigDict(frozen=True)

    max_conservation_residual: float
    sink_inflow: float
    total_info: float
    min_flow: float
    backward_mass: Optional[float] = None
