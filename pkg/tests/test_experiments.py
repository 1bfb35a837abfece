# tests/test_experiments.py
import matplotlib
import numpy as np
import pytest
from matplotlib import colors as mcolors

from app.config.setting import settings
from app.core import analytic, flow_opt
from app.core.ring_model import build_profile
from app.models.analytic import AnalyticSolution
from app.models.errors import InconsistencyError
from app.models.experiments import AreaMode, AxisSpec, ScalingMode
from app.models.params import NodeProfile, SystemParams
from app.models.run_config import Method
from app.services.experiment_service import HEATMAP_PRESETS, ExperimentService
from app.utilities.helpers.fitting import fit_loglog_slope, linear_fit_r2
from app.utilities.helpers.heatmap_svg import cell_colors


@pytest.fixture
def service() -> ExperimentService:
    return ExperimentService()


def lp_phi(params: SystemParams) -> float:
    return flow_opt.solve_max_lifetime(build_profile(params)).phi


def exact_phi(params: SystemParams) -> float:
    return analytic.phi_exact(build_profile(params))


# Fitting helpers

def test_loglog_slope_of_power_law():
    xs = [1.0, 2.0, 3.0, 5.0, 8.0]
    assert fit_loglog_slope(xs, [x ** 2 for x in xs]) == pytest.approx(2.0)
    assert fit_loglog_slope(xs, [4.0] * 5) == pytest.approx(0.0, abs=1e-12)


def test_loglog_slope_rejects_bad_input():
    with pytest.raises(ValueError):
        fit_loglog_slope([1.0, 2.0], [1.0, 4.0])
    with pytest.raises(ValueError):
        fit_loglog_slope([1.0, 2.0, 3.0], [1.0, 0.0, 9.0])


def test_linear_fit_r2_exact_line():
    slope, intercept, r2 = linear_fit_r2([0, 1, 2, 3], [1, 3, 5, 7])
    assert slope == pytest.approx(2.0) and intercept == pytest.approx(1.0)
    assert r2 == pytest.approx(1.0)


# Agreement checks

def test_agreement_check_raises_when_valid_solution_disagrees(service, baseline_profile):
    closed = analytic.stepwise_flows(baseline_profile(n=3))
    assert service.check_agreement("exact", closed.phi, closed) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(InconsistencyError):
        service.check_agreement("off by 1%", closed.phi * 1.01, closed)


def test_agreement_check_skips_invalid_ansatz(service):
    profile = NodeProfile.custom(SystemParams(n_rings=2), a=[100, 1], c=[1, 1])
    closed = analytic.stepwise_flows(profile)
    phi = flow_opt.solve_max_lifetime(profile).phi
    assert isinstance(closed, AnalyticSolution) and not closed.valid
    assert phi >= 100 - 1e-9, "node 1 must at least move its own load"
    assert service.check_agreement("invalid", phi, closed) > 0.1


# Solve summary

def test_solve_summary_baseline(service):
    summary = service.solve(SystemParams(n_rings=5))
    assert summary.phi_lp == pytest.approx(summary.phi_exact, rel=1e-6)
    assert summary.analytic_valid and summary.structure_ok
    assert summary.lifetime == pytest.approx(1 / summary.phi_lp)
    assert summary.min_power_phi >= summary.phi_lp * (1 - 1e-9)
    assert summary.phi_sum is not None and summary.phi_integral is not None


def test_solve_summary_respects_methods(service):
    summary = service.solve(SystemParams(n_rings=5, gamma=0.0), (Method.EXACT, Method.INTEGRAL))
    assert summary.phi_lp is None and summary.min_total_power is None
    assert summary.phi_exact is not None
    assert summary.phi_integral is None, "1 + gamma - lambda < 0 has no integral approximation"


# Node study

def test_node_study_baseline(service, baseline):
    table = service.node_table(baseline)
    assert [row.j for row in table.rows] == list(range(1, 21))
    depletion = table.column("depl_total")
    assert np.allclose(depletion, table.phi, rtol=1e-6), "every node depletes at the same rate"
    peak = table.rows[int(np.argmax(table.column("info_stepwise")))]
    assert 0.4 <= peak.rel_pos <= 0.8
    assert table.rows[0].info_stepwise == 0.0
    assert np.allclose(table.column("info_other"), 0.0, atol=1e-6 * sum(table.column("info_total")))


def test_node_study_sweep(service):
    tables = service.run_node_study(SystemParams(n_rings=6), "alpha", [0.0, 0.5, 3.0])
    assert [t.value for t in tables] == [0.0, 0.5, 3.0]
    assert all(t.varied == "alpha" and len(t.rows) == 6 for t in tables)
    assert tables[2].params.alpha == 3.0


# Heatmaps

def test_heatmap_grid_shape_and_agreement(service):
    base = SystemParams(n_rings=5)
    grid = service.run_heatmap(base, AxisSpec(name="alpha", values=(0.0, 1.0, 3.0)),
                               AxisSpec(name="gamma", values=(0.0, 1.0)))
    assert len(grid.cells) == 3 and all(len(row) == 2 for row in grid.cells)
    for cell in grid.iter_cells():
        if cell.analytic_valid:
            assert abs(cell.phi_lp - cell.phi_exact) / cell.phi_exact <= 1e-6
    assert grid.cell(1.0, 1.0).phi_lp == pytest.approx(exact_phi(base))
    assert grid.log10_matrix().shape == (3, 2)


def test_heatmap_lambda_monotone(service):
    grid = service.run_heatmap(SystemParams(n_rings=8), AxisSpec(name="lambda", values=(1.1, 2.0, 3.0)),
                               AxisSpec(name="gamma", values=(0.0, 1.5, 3.0)))
    phi = grid.phi_matrix()
    assert np.all(np.diff(phi, axis=0) >= 0), "phi grows with lambda at every gamma"


def test_heatmap_presets(service):
    x_axis, y_axis = service.heatmap_preset("beta-gamma", resolution=13)
    assert (x_axis.name, y_axis.name) == HEATMAP_PRESETS["beta-gamma"]
    assert len(x_axis) == 13 and x_axis.values[0] == 0.5 and x_axis.values[-1] == 1.0
    assert y_axis.values[-1] == 3.0
    with pytest.raises(ValueError):
        service.heatmap_preset("alpha-beta")


def test_capacity_exponent_ratio(baseline):
    """Raising gamma from 0 to 1 cuts phi by a factor of about 3"""
    ratio = lp_phi(baseline) / lp_phi(baseline.with_value("gamma", 0.0))
    assert 2.5 <= ratio <= 4.0, ratio


def test_compression_ratio_effect(baseline):
    ratio = lp_phi(baseline) / lp_phi(baseline.with_value("beta", 0.5))
    assert ratio == pytest.approx(40.586, rel=1e-3)
    assert 30.0 <= ratio <= 50.0


def test_power_exponent_ratio(baseline):
    ratio = lp_phi(baseline.with_value("lambda", 3.0)) / lp_phi(baseline.with_value("lambda", 1.1))
    assert 6.0 <= ratio <= 16.0, ratio
    # at gamma = 3 node 1's own load pins phi to k_a / k_c = 210 for small lambda
    steep = baseline.with_value("gamma", 3.0)
    low, high = lp_phi(steep.with_value("lambda", 1.1)), lp_phi(steep.with_value("lambda", 3.0))
    assert low == pytest.approx(210.0, rel=1e-6)
    assert high / low > 10.0


def test_beta_gamma_extremes(baseline):
    largest = lp_phi(baseline.with_value("gamma", 3.0))
    smallest = lp_phi(baseline.with_value("beta", 0.5).with_value("gamma", 0.0))
    assert largest / smallest > 100


@pytest.mark.parametrize("gamma", [0.0, 1.0])
def test_density_exponent_barely_matters(baseline, gamma):
    values = [exact_phi(baseline.with_value("gamma", gamma).with_value("alpha", a)) for a in (0.0, 0.5, 1.0, 2.0, 3.0)]
    assert max(values) / min(values) <= 1.15


# Scaling

def test_fixed_spacing_scaling(service):
    tables = service.run_scaling_fixed_spacing(SystemParams(), list(range(5, 21)), [1.0, 0.95],
                                               (Method.EXACT, Method.SUM, Method.INTEGRAL))
    assert [t.series_value for t in tables] == [1.0, 0.95]
    exact = tables[0].column("phi_exact")
    assert np.all(np.diff(exact) > 0)
    assert tables[0].rows[-1].phi_exact == pytest.approx(72.8239, rel=1e-5)
    assert all(row.d == 1.0 and row.phi_lp is None for row in tables[0].rows)
    assert tables[0].mode is ScalingMode.FIXED_SPACING


def test_fixed_spacing_slope_below_lambda(baseline):
    ns = list(range(10, 41))
    slope = fit_loglog_slope(ns, [exact_phi(baseline.with_value("n", n)) for n in ns])
    assert slope == pytest.approx(1.68, abs=0.05)
    assert 1.5 <= slope <= 2.0


def test_fixed_spacing_saturates_under_compression(baseline):
    params = baseline.with_value("beta", 0.8)
    at_50 = exact_phi(params.with_value("n", 50))
    at_60 = exact_phi(params.with_value("n", 60))
    assert abs(at_60 - at_50) / at_50 < 0.01


def test_fixed_area_scaling(service):
    ns = list(range(5, 21))
    tables = service.run_scaling_fixed_area(SystemParams(), ns, [1.0], (Method.EXACT,))
    table = tables[0]
    assert table.area_mode is AreaMode.TEXT
    assert table.rows[0].d == pytest.approx(1 / 5.5)
    exact = table.column("phi_exact")
    assert np.all(np.diff(exact) < 0), "more rings over the same area deplete slower"
    _, _, r2 = linear_fit_r2(np.log(ns), 1.0 / exact)
    assert r2 > 0.98


def test_fixed_area_caption_spacing(service):
    table = service.run_scaling_fixed_area(SystemParams(), [4, 8], [1.0], (Method.EXACT,), AreaMode.CAPTION)[0]
    assert [row.d for row in table.rows] == [0.25, 0.125]


def test_fixed_area_saturates_at_gamma_one_and_a_half(baseline):
    params = baseline.with_value("gamma", 1.5)
    at_40 = exact_phi(params.with_value("n", 40).with_value("d", AreaMode.TEXT.spacing(40)))
    at_60 = exact_phi(params.with_value("n", 60).with_value("d", AreaMode.TEXT.spacing(60)))
    assert abs(at_60 - at_40) / at_40 < 0.05


def test_scaling_with_lp_cross_checks(service):
    table = service.run_scaling_fixed_spacing(SystemParams(), [2, 4, 6], [1.0])[0]
    for row in table.rows:
        assert row.phi_lp == pytest.approx(row.phi_exact, rel=1e-6)
        assert row.phi_sum is not None and row.phi_integral is not None


def test_compression_shrinks_direct_traffic(service, baseline):
    """Peak direct information drops by the same factor as phi when beta goes from 1 to 0.5"""
    full = service.node_table(baseline).column("info_direct").max()
    compressed = service.node_table(baseline.with_value("beta", 0.5)).column("info_direct").max()
    assert full / compressed == pytest.approx(40.5857, rel=1e-3)


def test_beta_gamma_heatmap_minimum(service, baseline):
    """Lowest phi sits at beta = 0.5, gamma = 0.75 rather than at the gamma = 0 corner"""
    grid = service.run_heatmap(baseline, AxisSpec(name="beta", values=(0.5, 0.75, 1.0)),
                               AxisSpec.linspace("gamma", 0.0, 3.0, 13))
    phi = grid.phi_matrix()
    i, k = np.unravel_index(np.argmin(phi), phi.shape)
    assert grid.x_axis.values[i] == 0.5
    assert grid.y_axis.values[k] == pytest.approx(0.75)
    assert phi[0, 3] == pytest.approx(1.0990, rel=1e-3)
    assert phi[0, 0] == pytest.approx(1.5671, rel=1e-3)
    darkest = mcolors.to_hex(matplotlib.colormaps[settings.SVG_COLORMAP](0.0))
    assert cell_colors(grid)[i][k] == darkest


@pytest.mark.parametrize("alpha", [0.0, 3.0])
def test_node_study_depletion_is_flat_across_density(service, baseline, alpha):
    table = service.node_table(baseline.with_value("alpha", alpha), "alpha", alpha)
    assert np.allclose(table.column("depl_total"), table.phi, rtol=1e-6), f"alpha={alpha}"
