# app/core/ring_model.py
"""
Ring-sector geometry reduced to N nodes on a line.

Node j (1..N) aggregates ring j of one sector; the sink is node 0. Every
per-node quantity follows a power law in j with area normalizers k_a, k_c.
"""
import math

import numpy as np

from ..models.errors import RingModelError
from ..models.params import NodeProfile, Normalization, SystemParams


def area_factor(params: SystemParams) -> float:
    n, d = params.n_rings, params.spacing
    if params.normalization is Normalization.PAPER_VERBATIM:
        return math.pi * n ** 2 * (d + 0.5) ** 2
    return math.pi * ((n + 0.5) * d) ** 2


def normalizers(params: SystemParams) -> tuple[float, float]:
    """(k_a, k_c): area factor over the power sums of j^alpha and j^gamma"""
    j = np.arange(1, params.n_rings + 1, dtype=float)
    area = area_factor(params)
    k_a = area / math.fsum(j ** params.alpha)
    k_c = area / math.fsum(j ** params.gamma)
    return k_a, k_c


def transmission_cost(i: int, j: int, params: SystemParams, k_t: float = 1.0) -> float:
    """Power per unit of information sent from node j to node i"""
    n = params.n_rings
    if i == j:
        raise RingModelError(f"node {j} cannot transmit to itself")
    if not (0 <= i <= n and 1 <= j <= n):
        raise RingModelError(f"invalid pair ({i}, {j}) for N={n}")
    return k_t * (params.spacing * abs(i - j)) ** params.lam


def cost_matrix(params: SystemParams, k_t: float = 1.0) -> np.ndarray:
    """t[i, j] for i in 0..N, j in 0..N; diagonal left at zero"""
    idx = np.arange(params.n_rings + 1, dtype=float)
    dist = params.spacing * np.abs(idx[:, None] - idx[None, :])
    return k_t * dist ** params.lam


def build_profile(params: SystemParams) -> NodeProfile:
    k_a, k_c = normalizers(params)
    j = np.arange(1, params.n_rings + 1, dtype=float)
    return NodeProfile(
        params=params,
        a=tuple(float(v) for v in k_a * j ** params.alpha),
        b=(float(params.beta),) * params.n_rings,
        c=tuple(float(v) for v in k_c * j ** params.gamma),
        k_a=k_a,
        k_c=k_c,
        k_t=1.0,
    )


def unit_step_cost(profile: NodeProfile) -> float:
    """t_1: cost of one hop of length d"""
    return profile.k_t * profile.spacing ** profile.lam
