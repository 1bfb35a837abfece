# tests/conftest.py
import math
import os

os.environ.setdefault("ENVIRONMENT", "TEST")

import pytest  # noqa: E402

from app.config.logging_config import setup_environment_logging  # noqa: E402
from app.core.ring_model import build_profile  # noqa: E402
from app.models.params import SystemParams  # noqa: E402

setup_environment_logging("TEST")


def baseline_phi(n: int) -> float:
    """Closed form at alpha = beta = gamma = 1, lambda = 2, d = 1 (phi_j telescopes to 2j/(j+1))"""
    j = range(1, n + 1)
    return math.fsum(k * k / (k + 1) for k in j) / math.fsum(1 / (k + 1) for k in j)


def flow_tol(profile, tol: float = 1e-8) -> float:
    """Absolute tolerance on flow quantities, scaled by the total information rate"""
    return tol * max(1.0, profile.total_info)


@pytest.fixture
def baseline() -> SystemParams:
    return SystemParams()


@pytest.fixture
def baseline_profile():
    """Profile factory: baseline parameters with overrides by axis name"""
    def make(**overrides):
        params = SystemParams()
        for name, value in overrides.items():
            params = params.with_value(name, value)
        return build_profile(params)
    return make


@pytest.fixture
def out_prefix(tmp_path):
    return str(tmp_path / "run")
