# app/models/params.py
import enum
import math
from typing import Any, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Normalization(str, enum.Enum):
    """How k_a and k_c are derived from the covered area"""
    PAPER_VERBATIM = "paper_verbatim"
    UNIT_DENSITY = "unit_density"


# Recommended parameter ranges; values outside are accepted with a warning
RECOMMENDED_RANGES: dict[str, tuple[float, float]] = {
    "alpha": (0.0, 3.0),
    "beta": (0.5, 1.0),
    "gamma": (0.0, 3.0),
    "lam": (1.1, 3.0),
    "n_rings": (1, 200),
    "spacing": (0.0, 1.0),
}

# CLI / axis names -> model field names
AXIS_FIELDS: dict[str, str] = {
    "alpha": "alpha",
    "beta": "beta",
    "gamma": "gamma",
    "lambda": "lam",
    "n": "n_rings",
    "d": "spacing",
}


class SystemParams(BaseModel):
    """The six scalar knobs of the ring-sector model plus the normalization mode"""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    alpha: float = Field(1.0, description="Information density exponent")
    beta: float = Field(1.0, gt=0.0, le=1.0, description="Compression ratio")
    gamma: float = Field(1.0, description="Energy capacity exponent")
    lam: float = Field(2.0, gt=1.0, alias="lambda", description="Transmission power exponent")
    n_rings: int = Field(20, ge=1, description="Number of rings N")
    spacing: float = Field(1.0, gt=0.0, description="Ring spacing d")
    normalization: Normalization = Normalization.PAPER_VERBATIM

    @field_validator("alpha", "beta", "gamma", "lam", "spacing")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value

    @model_validator(mode="after")
    def _warn_outside_recommended_ranges(self) -> "SystemParams":
        for name, (lo, hi) in RECOMMENDED_RANGES.items():
            value = getattr(self, name)
            if value < lo or value > hi:
                logger.warning(f"{name}={value} lies outside the recommended range [{lo}, {hi}]")
        return self

    def with_value(self, axis: str, value: Any) -> "SystemParams":
        """Validated copy with one parameter replaced (axis names: alpha, beta, gamma, lambda, n, d)"""
        field = AXIS_FIELDS.get(axis, axis)
        if field not in type(self).model_fields:
            raise ValueError(f"Unknown parameter: {axis}")
        data = self.model_dump()
        data[field] = value
        return type(self).model_validate(data)

    def axis_value(self, axis: str) -> float:
        return getattr(self, AXIS_FIELDS.get(axis, axis))


class NodeProfile(BaseModel):
    """Per-node information rate a, compression b and capacity c (node j stored at index j-1)"""
    model_config = ConfigDict(frozen=True)

    params: SystemParams
    a: Tuple[float, ...]
    b: Tuple[float, ...]
    c: Tuple[float, ...]
    k_a: float = 1.0
    k_c: float = 1.0
    k_t: float = 1.0

    @model_validator(mode="after")
    def _check_sequences(self) -> "NodeProfile":
        n = self.params.n_rings
        for name in ("a", "b", "c"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have length {n}")
        if any(not math.isfinite(v) or v < 0 for v in self.a):
            raise ValueError("a must be finite and nonnegative")
        if any(not math.isfinite(v) or v <= 0 for v in self.c):
            raise ValueError("c must be finite and positive")
        if any(not (0 < v <= 1) for v in self.b):
            raise ValueError("b must lie in (0, 1]")
        if not self.k_t > 0:
            raise ValueError("k_t must be positive")
        return self

    @property
    def n(self) -> int:
        return self.params.n_rings

    @property
    def lam(self) -> float:
        return self.params.lam

    @property
    def spacing(self) -> float:
        return self.params.spacing

    @property
    def forward_only(self) -> bool:
        """Backward flows are dropped whenever some node compresses"""
        return min(self.b) < 1.0

    @property
    def total_info(self) -> float:
        return math.fsum(self.a)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return np.asarray(self.a, dtype=float), np.asarray(self.b, dtype=float), np.asarray(self.c, dtype=float)

    @classmethod
    def custom(cls, params: SystemParams, a, b=None, c=None, k_t: float = 1.0) -> "NodeProfile":
        """Profile with explicit sequences; b defaults to beta and c to ones"""
        n = params.n_rings
        return cls(
            params=params,
            a=tuple(float(v) for v in a),
            b=tuple(float(v) for v in (b if b is not None else [params.beta] * n)),
            c=tuple(float(v) for v in (c if c is not None else [1.0] * n)),
            k_t=k_t,
        )
