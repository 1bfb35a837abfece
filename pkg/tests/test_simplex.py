# tests/test_simplex.py
import math

import numpy as np
import pytest

from app.core.simplex import residuals, solve_lp
from app.models.errors import LpFormatError
from app.models.lp import LpOptions, LpProblem, LpSolution, LpStatus


def test_inequality_problem():
    """min -x - y s.t. x + 2y <= 4, 3x + y <= 6"""
    problem = LpProblem.from_lists([-1, -1], ineq_matrix=[[1, 2], [3, 1]], ineq_rhs=[4, 6])
    sol = solve_lp(problem)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(-14 / 5, rel=1e-12)
    assert np.allclose(sol.x, [8 / 5, 6 / 5], atol=1e-12)
    assert residuals(problem, sol).within(1e-12)


def test_equality_needs_phase_one():
    """min 2x + 3y s.t. x + y = 4, x <= 3"""
    problem = LpProblem.from_lists([2, 3], eq_matrix=[[1, 1]], eq_rhs=[4], ineq_matrix=[[1, 0]], ineq_rhs=[3])
    sol = solve_lp(problem)
    assert sol.is_optimal
    assert sol.objective_value == pytest.approx(9.0)
    assert np.allclose(sol.x, [3.0, 1.0])


def test_negative_rhs_inequality():
    """-x <= -2 forces x >= 2"""
    problem = LpProblem.from_lists([1, 1], ineq_matrix=[[-1, 0]], ineq_rhs=[-2])
    sol = solve_lp(problem)
    assert sol.is_optimal
    assert sol.objective_value == pytest.approx(2.0)


def test_infeasible():
    problem = LpProblem.from_lists([1, 1], eq_matrix=[[1, 1]], eq_rhs=[-1])
    sol = solve_lp(problem)
    assert sol.status is LpStatus.INFEASIBLE
    assert math.isnan(sol.objective_value)


def test_unbounded():
    problem = LpProblem.from_lists([-1, 0], ineq_matrix=[[1, -1]], ineq_rhs=[1])
    sol = solve_lp(problem)
    assert sol.status is LpStatus.UNBOUNDED
    assert sol.objective_value == -math.inf


def test_redundant_equalities_are_dropped():
    problem = LpProblem.from_lists([1, 0], eq_matrix=[[1, 1], [2, 2]], eq_rhs=[2, 4])
    sol = solve_lp(problem)
    assert sol.is_optimal
    assert sol.objective_value == pytest.approx(0.0, abs=1e-12)
    assert np.allclose(sol.x, [0.0, 2.0])


def test_cycling_example_terminates():
    """Beale's degenerate problem cycles under the textbook rule without anti-cycling"""
    problem = LpProblem.from_lists(
        [-0.75, 150, -0.02, 6],
        ineq_matrix=[[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]],
        ineq_rhs=[0, 0, 1],
    )
    sol = solve_lp(problem, LpOptions(bland_switch_factor=1))
    assert sol.is_optimal
    assert sol.objective_value == pytest.approx(-0.05, rel=1e-9)
    assert np.allclose(sol.x, [0.04, 0.0, 1.0, 0.0], atol=1e-12)


def test_iterations_are_counted():
    problem = LpProblem.from_lists([-1, -1], ineq_matrix=[[1, 2], [3, 1]], ineq_rhs=[4, 6])
    sol = solve_lp(problem)
    assert 1 <= sol.iterations <= 10 * (problem.n_rows + problem.n_vars)


def test_malformed_problems_are_rejected():
    bad_shape = LpProblem(
        objective=np.array([1.0, 1.0]),
        eq_matrix=np.ones((1, 3)),
        eq_rhs=np.ones(1),
        ineq_matrix=np.zeros((0, 2)),
        ineq_rhs=np.zeros(0),
    )
    with pytest.raises(LpFormatError):
        solve_lp(bad_shape)
    with pytest.raises(LpFormatError):
        solve_lp(LpProblem.from_lists([1.0, float("nan")], ineq_matrix=[[1, 1]], ineq_rhs=[1]))
    with pytest.raises(LpFormatError):
        solve_lp(LpProblem.from_lists([1.0], ineq_matrix=[[float("inf")]], ineq_rhs=[1]))


def test_residuals_flag_violations():
    problem = LpProblem.from_lists([1, 1], eq_matrix=[[1, 1]], eq_rhs=[2], ineq_matrix=[[1, 0]], ineq_rhs=[1])
    point = LpSolution(x=np.array([1.5, 0.0]), objective_value=1.5, status=LpStatus.OPTIMAL, iterations=0)
    report = residuals(problem, point)
    assert report.max_eq_residual == pytest.approx(0.5)
    assert report.max_ineq_violation == pytest.approx(0.5)
    assert not report.within(1e-9)
    with pytest.raises(LpFormatError):
        residuals(problem, LpSolution(x=np.zeros(3), objective_value=0.0, status=LpStatus.OPTIMAL, iterations=0))


def test_unconstrained_problems():
    sol = solve_lp(LpProblem.from_lists([-1, 1]))
    assert sol.status is LpStatus.UNBOUNDED
    resting = solve_lp(LpProblem.from_lists([1, 2]))
    assert resting.is_optimal
    assert resting.objective_value == 0.0
    assert np.array_equal(resting.x, [0.0, 0.0])


def test_residuals_without_constraints_are_zero():
    problem = LpProblem.from_lists([1, 1])
    point = LpSolution(x=np.array([0.5, 2.0]), objective_value=2.5, status=LpStatus.OPTIMAL, iterations=0)
    report = residuals(problem, point)
    assert (report.max_eq_residual, report.max_ineq_violation, report.min_variable) == (0.0, 0.0, 0.5)


def test_residuals_at_origin_equal_largest_rhs():
    problem = LpProblem.from_lists([1, 1, 1], eq_matrix=[[1, 1, 0], [0, 1, 1]], eq_rhs=[2, -3])
    origin = LpSolution(x=np.zeros(3), objective_value=0.0, status=LpStatus.OPTIMAL, iterations=0)
    report = residuals(problem, origin)
    assert report.max_eq_residual == 3.0
    assert report.max_ineq_violation == 0.0
