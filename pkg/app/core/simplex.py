# app/core/simplex.py
"""
Two-phase primal simplex on a dense tableau.

Problems are taken in the form min c@x s.t. A_eq@x == b_eq, A_ub@x <= b_ub,
x >= 0. Rows are scaled to unit max-norm, inequalities get slacks, rows with
no usable slack get artificials. The last tableau row holds reduced costs and
-z in its last entry.
"""
import math
import time
from dataclasses import dataclass

import numpy as np
from loguru import logger

from ..config.logging_config import log_solver_stats
from ..models.errors import LpFormatError, SolverError
from ..models.lp import LpOptions, LpProblem, LpSolution, LpStatus, ResidualReport


@dataclass
class _PivotState:
    """Iteration bookkeeping shared by both phases of one solve"""
    options: LpOptions
    bland_after: int
    max_iterations: int
    iterations: int = 0
    bland: bool = False


def _as_block(matrix, rhs, n: int, label: str) -> tuple[np.ndarray, np.ndarray]:
    rhs = np.asarray(rhs, dtype=float).reshape(-1)
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0 and rhs.size == 0:
        return np.zeros((0, n)), rhs
    if matrix.ndim != 2 or matrix.shape != (rhs.size, n):
        raise LpFormatError(f"{label} matrix has shape {matrix.shape}, expected ({rhs.size}, {n})")
    return matrix, rhs


def _validated_arrays(problem: LpProblem):
    c = np.asarray(problem.objective, dtype=float)
    if c.ndim != 1:
        raise LpFormatError("objective must be a vector")
    n = c.size
    a_eq, b_eq = _as_block(problem.eq_matrix, problem.eq_rhs, n, "equality")
    a_ub, b_ub = _as_block(problem.ineq_matrix, problem.ineq_rhs, n, "inequality")
    for name, arr in (("objective", c), ("eq_matrix", a_eq), ("eq_rhs", b_eq),
                      ("ineq_matrix", a_ub), ("ineq_rhs", b_ub)):
        if not np.all(np.isfinite(arr)):
            raise LpFormatError(f"{name} contains non-finite entries")
    return c, a_eq, b_eq, a_ub, b_ub


def _standard_form(a_eq, b_eq, a_ub, b_ub) -> tuple[np.ndarray, np.ndarray, list[int]]:
    """Scaled [A | slacks] x = b with b >= 0, plus the slack-feasible part of the basis"""
    m_eq, m_ub = b_eq.size, b_ub.size
    n = a_eq.shape[1]
    rows = np.vstack([a_eq, a_ub])
    rhs = np.concatenate([b_eq, b_ub])

    scale = np.abs(rows).max(axis=1) if n > 0 else np.ones(rows.shape[0])
    scale[scale == 0.0] = 1.0
    rows = rows / scale[:, None]
    rhs = rhs / scale

    a_std = np.zeros((m_eq + m_ub, n + m_ub))
    a_std[:, :n] = rows
    a_std[m_eq + np.arange(m_ub), n + np.arange(m_ub)] = 1.0

    flipped = rhs < 0
    a_std[flipped] *= -1.0
    rhs = np.where(flipped, -rhs, rhs)

    basis = [-1] * (m_eq + m_ub)
    for k in range(m_ub):
        if not flipped[m_eq + k]:
            basis[m_eq + k] = n + k
    return a_std, rhs, basis


def _pivot(tableau: np.ndarray, basis: list[int], row: int, col: int) -> None:
    pivot_row = tableau[row] / tableau[row, col]
    tableau -= np.outer(tableau[:, col], pivot_row)
    tableau[row] = pivot_row
    basis[row] = col


def _entering(costs: np.ndarray, state: _PivotState) -> int | None:
    candidates = np.flatnonzero(costs < -state.options.feasibility_tol)
    if candidates.size == 0:
        return None
    if state.bland:
        return int(candidates[0])
    return int(np.argmin(costs))


def _leaving(tableau: np.ndarray, basis: list[int], col: int, state: _PivotState) -> int | None:
    m = tableau.shape[0] - 1
    column = tableau[:m, col]
    eligible = np.flatnonzero(column > state.options.pivot_tol)
    if eligible.size == 0:
        return None
    ratios = np.maximum(tableau[eligible, -1], 0.0) / column[eligible]
    best = ratios.min()
    tied = eligible[ratios <= best + 1e-12 * max(1.0, abs(best))]
    if state.bland:
        return int(min(tied, key=lambda r: basis[r]))
    return int(tied[0])


def _run_phase(tableau: np.ndarray, basis: list[int], n_cols: int, state: _PivotState) -> LpStatus | None:
    """Pivot until optimal or unbounded; None means the iteration cap was hit"""
    m = tableau.shape[0] - 1
    while True:
        if state.iterations >= state.max_iterations:
            return None
        if not state.bland and state.iterations >= state.bland_after:
            logger.debug(f"SOLVER | switching to Bland's rule after {state.iterations} iterations")
            state.bland = True

        col = _entering(tableau[m, :n_cols], state)
        if col is None:
            return LpStatus.OPTIMAL
        row = _leaving(tableau, basis, col, state)
        if row is None:
            return LpStatus.UNBOUNDED
        _pivot(tableau, basis, row, col)
        state.iterations += 1


def _drive_out_artificials(tableau: np.ndarray, basis: list[int], n_std: int, pivot_tol: float) -> list[int]:
    """Pivot basic artificials onto real columns; returns redundant rows to drop"""
    redundant = []
    m = tableau.shape[0] - 1
    for row in range(m):
        if basis[row] < n_std:
            continue
        candidates = np.abs(tableau[row, :n_std])
        col = int(np.argmax(candidates)) if n_std > 0 else -1
        if col >= 0 and candidates[col] > pivot_tol:
            _pivot(tableau, basis, row, col)
        else:
            redundant.append(row)
    return redundant


def _polish(a_std: np.ndarray, rhs: np.ndarray, basis: list[int], x_all: np.ndarray) -> np.ndarray:
    """Re-solve B x_B = b in the final basis to shed accumulated pivot error"""
    if not basis:
        return x_all
    try:
        x_b = np.linalg.solve(a_std[:, basis], rhs)
    except np.linalg.LinAlgError:
        return x_all
    if not np.all(np.isfinite(x_b)):
        return x_all
    polished = np.zeros_like(x_all)
    polished[basis] = x_b
    return polished


def solve_lp(problem: LpProblem, options: LpOptions | None = None) -> LpSolution:
    """
    Solve the LP. Infeasible and unbounded problems are reported through the
    status; malformed input raises LpFormatError.
    """
    options = options or LpOptions()
    started = time.perf_counter()
    c, a_eq, b_eq, a_ub, b_ub = _validated_arrays(problem)
    n = c.size

    a_std, rhs, basis = _standard_form(a_eq, b_eq, a_ub, b_ub)
    m, n_std = a_std.shape
    art_rows = [r for r in range(m) if basis[r] < 0]
    n_art = len(art_rows)

    tableau = np.zeros((m + 1, n_std + n_art + 1))
    tableau[:m, :n_std] = a_std
    tableau[:m, -1] = rhs
    for k, row in enumerate(art_rows):
        tableau[row, n_std + k] = 1.0
        basis[row] = n_std + k

    size = m + n_std + n_art
    state = _PivotState(
        options=options,
        bland_after=options.bland_switch_factor * size,
        max_iterations=options.iteration_factor * size,
    )

    def finish(status: LpStatus, x: np.ndarray, value: float) -> LpSolution:
        log_solver_stats("lp", m, n, state.iterations, status.value, time.perf_counter() - started)
        return LpSolution(x=x, objective_value=value, status=status,
                          iterations=state.iterations, basis=tuple(basis))

    # Phase 1: minimize the sum of artificials
    if n_art:
        tableau[m, n_std:n_std + n_art] = 1.0
        for row in art_rows:
            tableau[m] -= tableau[row]
        status = _run_phase(tableau, basis, n_std + n_art, state)
        if status is None:
            return _iteration_limit(state, m, n)
        infeasibility = -tableau[m, -1]
        if infeasibility > options.feasibility_tol * max(1.0, float(np.max(rhs, initial=0.0))):
            logger.debug(f"SOLVER | phase 1 ended with infeasibility {infeasibility:.3e}")
            return finish(LpStatus.INFEASIBLE, np.zeros(n), math.nan)

        redundant = _drive_out_artificials(tableau, basis, n_std, options.pivot_tol)
        if redundant:
            logger.debug(f"SOLVER | dropping {len(redundant)} redundant rows")
            keep = [r for r in range(m) if r not in redundant]
            tableau = np.vstack([tableau[keep], tableau[m:m + 1]])
            a_std, rhs = a_std[keep], rhs[keep]
            basis[:] = [basis[r] for r in keep]
            m = len(keep)
        tableau = np.hstack([tableau[:, :n_std], tableau[:, -1:]])

    # Phase 2: the real objective
    cost = np.zeros(n_std)
    cost[:n] = c
    tableau[m, :n_std] = cost - cost[basis] @ tableau[:m, :n_std]
    tableau[m, -1] = -cost[basis] @ tableau[:m, -1]
    status = _run_phase(tableau, basis, n_std, state)
    if status is None:
        return _iteration_limit(state, m, n)

    x_all = np.zeros(n_std)
    x_all[basis] = tableau[:m, -1]
    if status is LpStatus.UNBOUNDED:
        return finish(LpStatus.UNBOUNDED, x_all[:n], -math.inf)

    x_all = _polish(a_std, rhs, basis, x_all)
    x = np.maximum(x_all[:n], 0.0)
    return finish(LpStatus.OPTIMAL, x, math.fsum(c * x))


def _iteration_limit(state: _PivotState, rows: int, cols: int):
    logger.error(f"SOLVER | iteration cap {state.max_iterations} reached ({rows}x{cols})")
    raise SolverError(f"simplex did not terminate within {state.max_iterations} iterations")


def residuals(problem: LpProblem, solution: LpSolution) -> ResidualReport:
    """Recompute every constraint slack of the reported point"""
    c, a_eq, b_eq, a_ub, b_ub = _validated_arrays(problem)
    x = np.asarray(solution.x, dtype=float)
    if x.shape != c.shape:
        raise LpFormatError(f"solution has {x.size} entries, problem has {c.size} variables")

    def row_value(row: np.ndarray) -> float:
        return math.fsum(row * x)

    eq = max((abs(row_value(row) - rhs) for row, rhs in zip(a_eq, b_eq)), default=0.0)
    ub = max((row_value(row) - rhs for row, rhs in zip(a_ub, b_ub)), default=0.0)
    return ResidualReport(
        max_eq_residual=float(eq),
        max_ineq_violation=float(max(ub, 0.0)),
        min_variable=float(x.min()) if x.size else 0.0,
    )
