# app/core/flow_opt.py
"""
The max-lifetime and min-total-power linear programs of a node profile.

Variable x_ij is the information rate from node j to node i (i = 0 is the
sink). Node j forwards b_j times everything it generates or receives, so
sum_i x_ij = b_j (a_j + sum_i x_ji).
"""
import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from loguru import logger

from ..config.setting import settings
from ..models.errors import SolverError
from ..models.flow import (
    FlowCheck,
    FlowSolution,
    NodeFlow,
    ObjectiveComparison,
    ObjectiveKind,
    StructureReport,
)
from ..models.lp import LpOptions, LpProblem
from ..models.params import NodeProfile
from ..models.analytic import AnalyticSolution
from .analytic import analytic_flow_matrix
from .ring_model import cost_matrix, transmission_cost
from .simplex import solve_lp


@dataclass(frozen=True)
class FlowLayout:
    """Ordering of the admissible (receiver, sender) pairs, optionally followed by phi"""
    n: int
    forward_only: bool
    with_phi: bool

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, j)
            for j in range(1, self.n + 1)
            for i in range(self.n + 1)
            if i != j and (not self.forward_only or i < j)
        )

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {pair: k for k, pair in enumerate(self.pairs)}

    @property
    def phi_index(self) -> int:
        return len(self.pairs)

    @property
    def n_vars(self) -> int:
        return len(self.pairs) + int(self.with_phi)

    def names(self) -> tuple[str, ...]:
        names = tuple(f"x_{i}_{j}" for i, j in self.pairs)
        return names + (("phi",) if self.with_phi else ())

    def to_matrix(self, values: np.ndarray) -> np.ndarray:
        x = np.zeros((self.n + 1, self.n + 1))
        for k, (i, j) in enumerate(self.pairs):
            x[i, j] = values[k]
        return x

    def to_vector(self, x: np.ndarray, phi: float | None = None) -> np.ndarray:
        values = np.zeros(self.n_vars)
        for k, (i, j) in enumerate(self.pairs):
            values[k] = x[i, j]
        if self.with_phi:
            values[self.phi_index] = phi if phi is not None else 0.0
        return values


def layout_for(profile: NodeProfile, with_phi: bool) -> FlowLayout:
    return FlowLayout(n=profile.n, forward_only=profile.forward_only, with_phi=with_phi)


def _conservation_rows(profile: NodeProfile, layout: FlowLayout) -> tuple[np.ndarray, np.ndarray]:
    a, b, _ = profile.arrays()
    matrix = np.zeros((profile.n, layout.n_vars))
    for k, (i, j) in enumerate(layout.pairs):
        matrix[j - 1, k] += 1.0
        if i >= 1:
            matrix[i - 1, k] -= b[i - 1]
    return matrix, b * a


def build_max_lifetime_lp(profile: NodeProfile) -> LpProblem:
    """minimize phi s.t. conservation per node and power_j / c_j <= phi"""
    layout = layout_for(profile, with_phi=True)
    eq_matrix, eq_rhs = _conservation_rows(profile, layout)
    t = cost_matrix(profile.params, profile.k_t)
    _, _, c = profile.arrays()

    ineq_matrix = np.zeros((profile.n, layout.n_vars))
    for k, (i, j) in enumerate(layout.pairs):
        ineq_matrix[j - 1, k] = t[i, j] / c[j - 1]
    ineq_matrix[:, layout.phi_index] = -1.0

    objective = np.zeros(layout.n_vars)
    objective[layout.phi_index] = 1.0
    return LpProblem(
        objective=objective,
        eq_matrix=eq_matrix,
        eq_rhs=eq_rhs,
        ineq_matrix=ineq_matrix,
        ineq_rhs=np.zeros(profile.n),
        variable_names=layout.names(),
    )


def build_min_power_lp(profile: NodeProfile) -> LpProblem:
    """minimize sum t_ij x_ij s.t. conservation per node"""
    layout = layout_for(profile, with_phi=False)
    eq_matrix, eq_rhs = _conservation_rows(profile, layout)
    t = cost_matrix(profile.params, profile.k_t)
    objective = np.array([t[i, j] for i, j in layout.pairs])
    return LpProblem(
        objective=objective,
        eq_matrix=eq_matrix,
        eq_rhs=eq_rhs,
        ineq_matrix=np.zeros((0, layout.n_vars)),
        ineq_rhs=np.zeros(0),
        variable_names=layout.names(),
    )


def decompose(profile: NodeProfile, x: np.ndarray) -> tuple[NodeFlow, ...]:
    """Split every node's outflow into direct (to sink), stepwise (to j-1) and other"""
    t = cost_matrix(profile.params, profile.k_t)
    _, _, c = profile.arrays()
    records = []
    for j in range(1, profile.n + 1):
        column = x[:, j]
        powers = column * t[:, j]
        direct = column[0]
        stepwise = column[j - 1] if j >= 2 else 0.0
        stepwise_power = powers[j - 1] if j >= 2 else 0.0
        records.append(NodeFlow(
            j=j,
            direct_info=float(direct),
            stepwise_info=float(stepwise),
            other_info=float(math.fsum(column) - direct - stepwise),
            direct_power=float(powers[0]),
            stepwise_power=float(stepwise_power),
            other_power=float(math.fsum(powers) - powers[0] - stepwise_power),
            capacity=float(c[j - 1]),
        ))
    return tuple(records)


def node_depletion_rates(profile: NodeProfile, x: np.ndarray) -> np.ndarray:
    """power_j / c_j for any flow matrix"""
    t = cost_matrix(profile.params, profile.k_t)
    _, _, c = profile.arrays()
    power = np.array([math.fsum(x[:, j] * t[:, j]) for j in range(1, profile.n + 1)])
    return power / c


def total_power(profile: NodeProfile, x: np.ndarray) -> float:
    t = cost_matrix(profile.params, profile.k_t)
    return math.fsum((x * t).ravel())


def check_flows(profile: NodeProfile, x: np.ndarray) -> FlowCheck:
    """Conservation residuals, sink inflow and backward mass of a flow matrix"""
    a, b, _ = profile.arrays()
    residual = 0.0
    for j in range(1, profile.n + 1):
        out = math.fsum(x[:, j])
        inflow = math.fsum(x[j, 1:])
        residual = max(residual, abs(out - b[j - 1] * (a[j - 1] + inflow)))
    backward = math.fsum(x[i, j] for j in range(1, profile.n + 1) for i in range(j + 1, profile.n + 1))
    return FlowCheck(
        max_conservation_residual=residual,
        sink_inflow=math.fsum(x[0, 1:]),
        total_info=profile.total_info,
        min_flow=float(x[:, 1:].min()),
        backward_mass=backward,
    )


def _solve(profile: NodeProfile, kind: ObjectiveKind, options: LpOptions | None) -> FlowSolution:
    with_phi = kind is ObjectiveKind.MAX_LIFETIME
    problem = build_max_lifetime_lp(profile) if with_phi else build_min_power_lp(profile)
    solution = solve_lp(problem, options)
    if not solution.is_optimal:
        # direct-only transmission is always feasible and costs are nonnegative
        logger.error(f"{kind.value} LP for N={profile.n} ended {solution.status.value}")
        raise SolverError(f"{kind.value} LP ended {solution.status.value}")

    layout = layout_for(profile, with_phi=with_phi)
    x = layout.to_matrix(solution.x)
    if with_phi:
        phi = float(solution.x[layout.phi_index])
    else:
        phi = float(node_depletion_rates(profile, x).max())
    return FlowSolution(
        x=x,
        phi=max(phi, 0.0),
        per_node=decompose(profile, x),
        objective_kind=kind,
        total_power=total_power(profile, x),
        total_info=profile.total_info,
        iterations=solution.iterations,
    )


def solve_max_lifetime(profile: NodeProfile, options: LpOptions | None = None) -> FlowSolution:
    return _solve(profile, ObjectiveKind.MAX_LIFETIME, options)


def solve_min_power(profile: NodeProfile, options: LpOptions | None = None) -> FlowSolution:
    """Min total power; phi reports the depletion rate this schedule induces"""
    return _solve(profile, ObjectiveKind.MIN_TOTAL_POWER, options)


def classify_flows(sol: FlowSolution, tol: float | None = None) -> StructureReport:
    """Is every flow either direct (to the sink) or stepwise (to j-1)?"""
    if tol is None:
        tol = settings.CLASSIFY_TOL_FACTOR * sol.total_info
    x = sol.x
    n = x.shape[0] - 1
    other = [x[i, j] for j in range(1, n + 1) for i in range(1, n + 1) if i not in (j, j - 1)]
    max_other = float(max(other, default=0.0))
    return StructureReport(is_direct_stepwise_only=max_other <= tol, max_other_mass=max_other, tol=tol)


def analytic_lp_point(profile: NodeProfile, solution: AnalyticSolution) -> np.ndarray:
    """The closed-form schedule as a point of the max-lifetime LP"""
    layout = layout_for(profile, with_phi=True)
    return layout.to_vector(analytic_flow_matrix(profile, solution), solution.phi)


def compare_objectives(profile: NodeProfile, options: LpOptions | None = None) -> ObjectiveComparison:
    lifetime = solve_max_lifetime(profile, options)
    power = solve_min_power(profile, options)
    return ObjectiveComparison(
        phi_max_lifetime=lifetime.phi,
        phi_min_power=power.phi,
        power_max_lifetime=lifetime.total_power,
        power_min_power=power.total_power,
    )


# Min-power oracle by path enumeration

def enumerate_monotone_paths(j: int) -> list[tuple[int, ...]]:
    """Every strictly decreasing node path from j to the sink"""
    paths = []
    for size in range(j):
        for middle in itertools.combinations(range(j - 1, 0, -1), size):
            paths.append((j, *middle, 0))
    return paths


def path_unit_power(profile: NodeProfile, path: tuple[int, ...]) -> float:
    """Power spent moving one unit generated at path[0] along the path"""
    _, b, _ = profile.arrays()
    carried = 1.0
    power = 0.0
    for sender, receiver in zip(path, path[1:]):
        carried *= b[sender - 1]
        power += carried * transmission_cost(receiver, sender, profile.params, profile.k_t)
    return power


def brute_force_min_power(profile: NodeProfile) -> float:
    """Total power when each node's information takes its cheapest monotone path"""
    a, _, _ = profile.arrays()
    return math.fsum(
        a[j - 1] * min(path_unit_power(profile, p) for p in enumerate_monotone_paths(j))
        for j in range(1, profile.n + 1)
    )
