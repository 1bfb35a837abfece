# app/core/analytic.py
"""
Closed forms for the equal-depletion schedule and the min-power chain.

With every node depleting at exactly phi and sending only direct (to the
sink) and stepwise (to its inner neighbour), node j's power balance gives

    y_{j+1} = w_j + q_j y_j,   y_1 = 0,  y_{N+1} = 0

where y_j is the stepwise flow out of node j and

    p_j = c_j / (b_j t_0j),  q_j = (1 - j^-lambda) / b_j,  w_j = p_j phi - a_j.

Eliminating y with the weights phi_j = prod_{k<=j} 1/q_k yields
phi = (a . phi_seq) / (p . phi_seq).
"""
import enum
import math

import numpy as np
from loguru import logger

from ..config.setting import settings
from ..models.analytic import AnalyticSolution
from ..models.errors import AnalyticDomainError
from ..models.params import NodeProfile, SystemParams
from ..utilities.helpers.fitting import fit_loglog_slope
from .ring_model import build_profile, unit_step_cost


class Expansion(str, enum.Enum):
    EXPONENTIAL = "exponential"
    SERIES = "series"


class MinPowerForm(str, enum.Enum):
    GENERAL = "general"
    CONSTANT_COMPRESSION = "constant_compression"
    CONSTANT_DENSITY = "constant_density"


def _direct_costs(profile: NodeProfile) -> np.ndarray:
    j = np.arange(1, profile.n + 1, dtype=float)
    return profile.k_t * (j * profile.spacing) ** profile.lam


def pqw(profile: NodeProfile, phi: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a, b, c = profile.arrays()
    j = np.arange(1, profile.n + 1, dtype=float)
    p = c / (b * _direct_costs(profile))
    q = (1.0 - j ** -profile.lam) / b
    w = p * phi - a
    return p, q, w


def phi_weights(profile: NodeProfile) -> np.ndarray:
    """phi_1 = 1, phi_j = prod_{k=2}^{j} b_k / (1 - k^-lambda)"""
    _, b, _ = profile.arrays()
    k = np.arange(2, profile.n + 1, dtype=float)
    factors = b[1:] / (1.0 - k ** -profile.lam)
    return np.concatenate([[1.0], np.cumprod(factors)])


def phi_exact(profile: NodeProfile) -> float:
    a, _, _ = profile.arrays()
    p, _, _ = pqw(profile, 0.0)
    weights = phi_weights(profile)
    return math.fsum(a * weights) / math.fsum(p * weights)


def stepwise_flows(profile: NodeProfile, tol: float | None = None) -> AnalyticSolution:
    """Forward substitution at the exact phi, with a feasibility verdict"""
    a, b, _ = profile.arrays()
    n = profile.n
    phi = phi_exact(profile)
    p, q, w = pqw(profile, phi)

    # y[j] for j = 0..N+1; y[0] unused, y[1] = 0
    y = np.zeros(n + 2)
    for j in range(1, n):
        y[j + 1] = w[j - 1] + q[j - 1] * y[j]

    terminal = w[n - 1] + q[n - 1] * y[n]
    scale = max(abs(w[n - 1]), abs(q[n - 1] * y[n]), a[n - 1], 1e-300)
    terminal_residual = abs(terminal) / scale
    if terminal_residual > 1e-8:
        logger.warning(f"terminal balance off by {terminal_residual:.2e} (relative) at N={n}")

    y[n + 1] = 0.0
    direct = b * (a + y[2:n + 2]) - y[1:n + 1]

    if tol is None:
        tol = settings.ANALYTIC_FEASIBILITY_TOL * max(profile.total_info, 1e-300)
    reason = None
    stepwise = y[2:n + 1]
    if stepwise.size and stepwise.min() < -tol:
        j = int(np.argmin(stepwise)) + 2
        reason = f"stepwise flow y_{j} = {y[j]:.6g} is negative"
    elif direct.min() < -tol:
        j = int(np.argmin(direct)) + 1
        reason = f"direct flow of node {j} = {direct[j - 1]:.6g} is negative"
    if reason:
        logger.info(f"Equal-depletion solution infeasible: {reason}")

    return AnalyticSolution(
        p=tuple(p.tolist()),
        q=tuple(q.tolist()),
        w=tuple(w.tolist()),
        phi_seq=tuple(phi_weights(profile).tolist()),
        y=tuple(stepwise.tolist()),
        direct=tuple(direct.tolist()),
        phi=phi,
        valid=reason is None,
        infeasibility_reason=reason,
        terminal_residual=terminal_residual,
    )


def stepwise_vector_form(profile: NodeProfile, phi: float | None = None) -> np.ndarray:
    """y_j = phi_{j-1}^-1 sum_{k<j} phi_k w_k for j = 2..N"""
    phi = phi_exact(profile) if phi is None else phi
    _, _, w = pqw(profile, phi)
    weights = phi_weights(profile)
    partial = np.cumsum(weights * w)
    return partial[:-1] / weights[:-1]


def analytic_flow_matrix(profile: NodeProfile, solution: AnalyticSolution) -> np.ndarray:
    """The direct+stepwise schedule as x[i, j] (receiver i, sender j)"""
    n = profile.n
    x = np.zeros((n + 1, n + 1))
    for j in range(1, n + 1):
        x[0, j] = solution.direct[j - 1]
        if j >= 2:
            x[j - 1, j] = solution.stepwise(j)
    return x


def node_powers(profile: NodeProfile, solution: AnalyticSolution) -> np.ndarray:
    """y_j t_1 + direct_j t_0j for every node"""
    t1 = unit_step_cost(profile)
    stepwise = np.array([solution.stepwise(j) for j in range(1, profile.n + 1)])
    return stepwise * t1 + np.asarray(solution.direct) * _direct_costs(profile)


# Minimum total power along the unit-step chain

def min_power_node(profile: NodeProfile, j: int, form: MinPowerForm | str = MinPowerForm.GENERAL) -> float:
    """Power node j spends when every node forwards its load one ring inward"""
    n = profile.n
    if not 1 <= j <= n:
        raise AnalyticDomainError(f"node index {j} outside 1..{n}")
    form = MinPowerForm(form)
    a, b, _ = profile.arrays()
    t1 = unit_step_cost(profile)

    if form is MinPowerForm.GENERAL:
        carried = np.cumprod(b[j - 1:])
        return t1 * math.fsum(a[j - 1:] * carried)

    if not np.allclose(b, b[0], rtol=0.0, atol=0.0):
        raise AnalyticDomainError("compression is not constant across nodes")
    beta = float(b[0])

    if form is MinPowerForm.CONSTANT_COMPRESSION:
        m = np.arange(0, n - j + 1, dtype=float)
        return t1 * math.fsum(a[j - 1:] * beta ** (m + 1))

    a1 = float(a[0])
    if not np.allclose(a, a1 * np.arange(1, n + 1), rtol=1e-12, atol=0.0):
        raise AnalyticDomainError("information rates are not proportional to the ring index")
    if beta == 1.0:
        return t1 * a1 / 2.0 * (n * (n + 1) - j * (j - 1))
    return (beta * t1 * a1 / (1.0 - beta) ** 2) * (
        beta + j * (1.0 - beta) - beta ** (n - j + 1) * ((1.0 - beta) * n + 1.0)
    )


def min_power_total(profile: NodeProfile) -> float:
    """t_1 sum_j a_j sum_{m<=j} prod_{l=m}^{j} b_l"""
    a, b, _ = profile.arrays()
    t1 = unit_step_cost(profile)
    total = []
    for j in range(1, profile.n + 1):
        hops = np.cumprod(b[j - 1::-1])
        total.append(a[j - 1] * math.fsum(hops))
    return t1 * math.fsum(total)


# Approximations

def q_product(lam: float, j: int) -> float:
    """Q(j) = prod_{k=2}^{j} (1 - k^-lambda)"""
    k = np.arange(2, j + 1, dtype=float)
    return float(np.prod(1.0 - k ** -lam))


def q_product_approx(lam: float, j, expansion: Expansion | str = Expansion.EXPONENTIAL):
    """
    Q(j)/Q_inf from the continuum limit of dQ/dj = -j^-lambda Q. The series
    form is the second-order expansion of the exponential in 1/Q.
    """
    if lam <= 1.0:
        raise AnalyticDomainError("the Q(j) approximation needs lambda > 1")
    x = np.asarray(j, dtype=float) ** (1.0 - lam) / (lam - 1.0)
    if Expansion(expansion) is Expansion.EXPONENTIAL:
        return np.exp(x)
    return 1.0 / (1.0 - x + 0.5 * x ** 2)


def phi_sum_approx(params: SystemParams, expansion: Expansion | str = Expansion.EXPONENTIAL) -> float:
    """phi with 1/Q(j) replaced by its continuum approximation"""
    lam = params.lam
    if lam <= 1.0:
        raise AnalyticDomainError("the summation approximation needs lambda > 1")
    j = np.arange(1, params.n_rings + 1, dtype=float)
    inv_q = 1.0 / q_product_approx(lam, j, expansion)
    geometric = params.beta ** j
    ratio = math.fsum(j ** params.gamma) / math.fsum(j ** params.alpha)
    numerator = math.fsum(j ** params.alpha * geometric * inv_q)
    denominator = math.fsum(j ** (params.gamma - lam) * geometric * inv_q)
    return params.beta * params.spacing ** lam * ratio * numerator / denominator


def _integral_constants(alpha: float, gamma: float, lam: float, strict: bool) -> dict[str, float]:
    def ratio(num: float, den: float, name: str) -> float:
        if den == 0.0:
            raise AnalyticDomainError(f"integral approximation constant {name} is singular here")
        return num / den

    const = {
        "c1": (alpha + 1.0) / (alpha + 2.0),
        "c2": ratio(alpha + 1.0, (lam - 1.0) * (alpha - lam + 2.0), "c2"),
        "c5": 1.0 / (lam - 1.0) ** 2,
        "c6": 1.0 / (4.0 * (lam - 1.0) ** 3),
        "c7": -(2.0 ** (lam - 1.0)) / (lam - 1.0) ** 2 + 4.0 ** (lam - 2.0) / (lam - 1.0) ** 3 + math.log(2.0),
    }
    if strict:
        s = gamma - lam + 1.0
        den = (lam - 1.0) * (gamma - 2.0 * lam + 2.0)
        const["c3"] = ratio(s, den, "c3")
        const["c4"] = 1.0 - ratio(s * 2.0 ** (-2.0 + 2.0 * lam - gamma), den, "c4")
    return const


def phi_integral_approx(params: SystemParams) -> float:
    """Low-compression integral approximation, first order in 1 - beta^N and N^(1-lambda)"""
    alpha, beta, gamma, lam = params.alpha, params.beta, params.gamma, params.lam
    if lam <= 1.0:
        raise AnalyticDomainError("the integral approximation needs lambda > 1")
    slack = 1.0 + gamma - lam
    equality = abs(slack) <= settings.BRANCH_EQUALITY_TOL
    if slack < 0 and not equality:
        raise AnalyticDomainError(f"no integral approximation for 1 + gamma - lambda = {slack:.6g} < 0")

    const = _integral_constants(alpha, gamma, lam, strict=not equality)
    n_t = params.n_rings + 0.5
    lead = beta * (n_t * params.spacing) ** lam / (gamma + 1.0)
    lead *= 1.0 - const["c1"] * (1.0 - beta ** params.n_rings) - const["c2"] * n_t ** (1.0 - lam)

    if equality:
        return lead / (math.log(n_t) + const["c5"] * n_t ** (1.0 - lam)
                       - const["c6"] * n_t ** (2.0 - 2.0 * lam) - const["c7"])
    return lead * (gamma - lam + 1.0) / (1.0 - const["c3"] * n_t ** (1.0 - lam)
                                         - const["c4"] * n_t ** (-gamma + lam - 1.0))


def high_compression_exponent(params: SystemParams) -> float:
    """Predicted exponent of phi ~ N^(gamma - alpha) when beta^N -> 0"""
    return params.gamma - params.alpha


def high_compression_slope(params: SystemParams, n_lo: int, n_hi: int) -> float:
    """Least-squares slope of log phi_exact against log N over n_lo..n_hi"""
    if params.beta >= 1.0:
        raise AnalyticDomainError("the high-compression slope needs beta < 1")
    if n_hi <= n_lo:
        raise AnalyticDomainError("n_hi must exceed n_lo")
    if params.beta ** n_lo >= 1e-6:
        raise AnalyticDomainError(f"beta^{n_lo} = {params.beta ** n_lo:.3g} is not small enough")

    ns = np.arange(n_lo, n_hi + 1)
    phis = [phi_exact(build_profile(params.with_value("n", int(n)))) for n in ns]
    return fit_loglog_slope(ns, phis)
