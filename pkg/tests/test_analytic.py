# tests/test_analytic.py
import math

import numpy as np
import pytest

from app.core import analytic
from app.core.ring_model import build_profile
from app.models.errors import AnalyticDomainError
from app.models.params import NodeProfile, SystemParams
from tests.conftest import baseline_phi


@pytest.mark.parametrize("n, expected", [(1, 1.0), (2, 11 / 5), (3, 49 / 13), (20, baseline_phi(20))])
def test_phi_exact_hand_values(baseline_profile, n, expected):
    assert analytic.phi_exact(baseline_profile(n=n)) == pytest.approx(expected, rel=1e-9)


def test_phi_exact_reference_points(baseline_profile):
    assert analytic.phi_exact(baseline_profile(n=20)) == pytest.approx(72.82390791, rel=1e-8)
    assert analytic.phi_exact(baseline_profile(n=10)) == pytest.approx(23.27858049, rel=1e-8)
    assert analytic.phi_exact(baseline_profile(n=20, beta=0.5)) == pytest.approx(1.794323942, rel=1e-8)
    assert analytic.phi_exact(baseline_profile(n=20, lam=3.0)) == pytest.approx(151.344206, rel=1e-8)


def test_phi_weights_telescope(baseline_profile):
    """phi_j = 2j / (j + 1) at lambda = 2, beta = 1"""
    weights = analytic.phi_weights(baseline_profile(n=15))
    j = np.arange(1, 16)
    assert np.allclose(weights, 2 * j / (j + 1), rtol=1e-12)


def test_two_ring_flows(baseline_profile):
    """N=2 baseline: k_a = 3 pi, stepwise 3.6 pi, direct 6.6 pi and 2.4 pi"""
    sol = analytic.stepwise_flows(baseline_profile(n=2))
    assert sol.valid
    assert sol.y == pytest.approx((3.6 * math.pi,), rel=1e-10)
    assert sol.direct == pytest.approx((6.6 * math.pi, 2.4 * math.pi), rel=1e-10)
    assert sol.stepwise(1) == 0.0 and sol.stepwise(3) == 0.0


def test_three_ring_first_stepwise_flow(baseline_profile):
    sol = analytic.stepwise_flows(baseline_profile(n=3))
    assert sol.valid
    assert sol.stepwise(2) == pytest.approx(121.5 * math.pi / 13, rel=1e-10)
    assert sol.terminal_residual < 1e-10


def test_single_ring_has_no_stepwise_flow(baseline_profile):
    sol = analytic.stepwise_flows(baseline_profile(n=1))
    assert sol.y == ()
    assert sol.phi == pytest.approx(1.0)
    assert sol.lifetime == pytest.approx(1.0)


def test_vector_form_matches_recurrence(baseline_profile):
    profile = baseline_profile(n=10)
    sol = analytic.stepwise_flows(profile)
    assert np.allclose(analytic.stepwise_vector_form(profile), sol.y, rtol=1e-9)


def test_equal_depletion_powers(baseline_profile):
    profile = baseline_profile(n=20)
    sol = analytic.stepwise_flows(profile)
    assert sol.valid, sol.infeasibility_reason
    _, _, c = profile.arrays()
    assert np.allclose(analytic.node_powers(profile, sol) / c, sol.phi, rtol=1e-9)


def test_infeasible_ansatz_is_reported():
    """Heavy inner load makes the first stepwise flow negative"""
    profile = NodeProfile.custom(SystemParams(n_rings=2), a=[100, 1], c=[1, 1])
    sol = analytic.stepwise_flows(profile)
    assert sol.phi == pytest.approx(76.0, rel=1e-12)
    assert not sol.valid
    assert "stepwise" in sol.infeasibility_reason


def test_flow_matrix_layout(baseline_profile):
    profile = baseline_profile(n=3)
    sol = analytic.stepwise_flows(profile)
    x = analytic.analytic_flow_matrix(profile, sol)
    assert x.shape == (4, 4)
    assert x[0, 3] == pytest.approx(sol.direct[2])
    assert x[1, 2] == pytest.approx(sol.stepwise(2))
    assert x[1, 3] == 0.0 and x[0, 0] == 0.0


def test_min_power_node_chain():
    profile = NodeProfile.custom(SystemParams(n_rings=3), a=[1, 2, 3])
    assert analytic.min_power_node(profile, 1) == pytest.approx(6.0)
    assert analytic.min_power_node(profile, 3) == pytest.approx(3.0)
    assert analytic.min_power_total(profile) == pytest.approx(14.0)


def test_min_power_with_compression():
    profile = NodeProfile.custom(SystemParams(n_rings=2, beta=0.5), a=[1, 2])
    assert analytic.min_power_node(profile, 1) == pytest.approx(1.0)
    assert analytic.min_power_node(profile, 2) == pytest.approx(1.0)
    assert analytic.min_power_total(profile) == pytest.approx(2.0)


@pytest.mark.parametrize("beta", [0.5, 0.9, 1.0])
def test_min_power_specializations_agree(beta):
    profile = build_profile(SystemParams(n_rings=6, beta=beta, lam=3.0, spacing=0.5))
    for j in range(1, 7):
        general = analytic.min_power_node(profile, j)
        assert analytic.min_power_node(profile, j, "constant_compression") == pytest.approx(general, rel=1e-12)
        assert analytic.min_power_node(profile, j, "constant_density") == pytest.approx(general, rel=1e-12)


def test_min_power_domain_errors():
    profile = build_profile(SystemParams(n_rings=3, alpha=0.0))
    with pytest.raises(AnalyticDomainError):
        analytic.min_power_node(profile, 0)
    with pytest.raises(AnalyticDomainError):
        analytic.min_power_node(profile, 4)
    with pytest.raises(AnalyticDomainError):
        analytic.min_power_node(profile, 1, "constant_density")
    mixed = NodeProfile.custom(SystemParams(n_rings=2), a=[1, 2], b=[1.0, 0.5])
    with pytest.raises(AnalyticDomainError):
        analytic.min_power_node(mixed, 1, "constant_compression")


def test_q_product():
    """Q(j) = (j + 1) / (2j) at lambda = 2"""
    assert analytic.q_product(2.0, 1) == 1.0
    assert analytic.q_product(2.0, 3) == pytest.approx(2 / 3)
    assert analytic.q_product(2.0, 50) == pytest.approx(51 / 100)


@pytest.mark.parametrize("expansion", ["exponential", "series"])
def test_q_product_approx_tracks_normalized_product(expansion):
    # Q(20) / Q(inf) = (21/40) / (1/2)
    assert analytic.q_product_approx(2.0, 20, expansion) == pytest.approx(1.05, rel=2e-3)
    values = analytic.q_product_approx(2.0, np.arange(1, 30), expansion)
    assert np.all(np.diff(values) < 0), "approaches 1 from above"


def test_q_product_approx_domain():
    with pytest.raises(AnalyticDomainError):
        analytic.q_product_approx(1.0, 5)


@pytest.mark.parametrize("n", [10, 15, 20])
def test_summation_approximation(baseline, n):
    params = baseline.with_value("n", n)
    exact = analytic.phi_exact(build_profile(params))
    for expansion in ("exponential", "series"):
        approx = analytic.phi_sum_approx(params, expansion)
        assert abs(approx - exact) / exact < 0.10, f"{expansion} at N={n}"


def test_summation_forms_agree(baseline):
    exponential = analytic.phi_sum_approx(baseline, "exponential")
    series = analytic.phi_sum_approx(baseline, "series")
    assert exponential == pytest.approx(77.9527, rel=1e-4)
    assert series == pytest.approx(73.7118, rel=1e-4)
    assert abs(exponential - series) / series < 0.08


def test_integral_approximation(baseline):
    errors = []
    for n in (10, 15, 20):
        params = baseline.with_value("n", n)
        exact = analytic.phi_exact(build_profile(params))
        errors.append(abs(analytic.phi_integral_approx(params) - exact) / exact)
    assert max(errors) < 0.35
    assert errors[0] > errors[1] > errors[2], "error shrinks as N grows"
    assert analytic.phi_integral_approx(baseline) == pytest.approx(56.1775, rel=1e-4)


def test_integral_approximation_strict_branch(baseline):
    params = baseline.with_value("gamma", 1.5)
    value = analytic.phi_integral_approx(params)
    exact = analytic.phi_exact(build_profile(params))
    assert value > 0 and math.isfinite(value)
    assert value == pytest.approx(147.11875, rel=1e-6)
    assert abs(value - exact) / exact < 0.5


def test_integral_approximation_unsupported_branch(baseline):
    with pytest.raises(AnalyticDomainError):
        analytic.phi_integral_approx(baseline.with_value("gamma", 0.0))


@pytest.mark.parametrize("alpha, gamma", [(1.0, 2.0), (1.0, 1.0), (2.0, 1.0)])
def test_high_compression_slope(alpha, gamma):
    params = SystemParams(alpha=alpha, gamma=gamma, beta=0.5)
    slope = analytic.high_compression_slope(params, 40, 80)
    assert slope == pytest.approx(analytic.high_compression_exponent(params), abs=0.15)


def test_high_compression_slope_domain(baseline):
    with pytest.raises(AnalyticDomainError):
        analytic.high_compression_slope(baseline, 40, 80)
    with pytest.raises(AnalyticDomainError):
        analytic.high_compression_slope(baseline.with_value("beta", 0.95), 10, 20)
    with pytest.raises(AnalyticDomainError):
        analytic.high_compression_slope(baseline.with_value("beta", 0.5), 40, 40)


@pytest.mark.parametrize("s", [0.1, 10.0])
def test_phi_is_linear_in_load_and_inverse_in_capacity(baseline_profile, s):
    profile = baseline_profile(n=6)
    phi = analytic.phi_exact(profile)
    loaded = profile.model_copy(update={"a": tuple(s * v for v in profile.a)})
    larger = profile.model_copy(update={"c": tuple(s * v for v in profile.c)})
    assert analytic.phi_exact(loaded) == pytest.approx(s * phi, rel=1e-12)
    assert analytic.phi_exact(larger) == pytest.approx(phi / s, rel=1e-12)


@pytest.mark.parametrize("d", [0.05, 0.5])
@pytest.mark.parametrize("lam", [2.0, 3.0])
def test_phi_scales_with_spacing_power(baseline, d, lam):
    params = baseline.with_value("n", 8).with_value("lambda", lam)
    reference = analytic.phi_exact(build_profile(params))
    scaled = analytic.phi_exact(build_profile(params.with_value("d", d)))
    assert scaled == pytest.approx(d ** lam * reference, rel=1e-12)


@pytest.mark.parametrize("beta", [0.5, 0.8])
def test_phi_weights_telescope_under_compression(baseline_profile, beta):
    """phi_j (j + 1) / (2j) = beta^(j-1) at lambda = 2"""
    weights = analytic.phi_weights(baseline_profile(n=12, beta=beta))
    j = np.arange(1, 13)
    assert np.allclose(weights * (j + 1) / (2 * j), beta ** (j - 1), rtol=1e-12)
