# app/models/experiments.py
import enum
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

from .params import AXIS_FIELDS, SystemParams


class ScalingMode(str, enum.Enum):
    FIXED_SPACING = "fixed-spacing"
    FIXED_AREA = "fixed-area"


class AreaMode(str, enum.Enum):
    """Spacing rule for constant-area scaling"""
    TEXT = "text"        # d = 1/(N + 0.5)
    CAPTION = "caption"  # d = 1/N

    def spacing(self, n_rings: int) -> float:
        return 1.0 / (n_rings + 0.5) if self is AreaMode.TEXT else 1.0 / n_rings


class AxisSpec(BaseModel):
    """A named parameter axis with sorted, distinct sample values"""
    model_config = ConfigDict(frozen=True)

    name: str
    values: tuple[float, ...] = Field(..., min_length=1)

    @field_validator("name")
    @classmethod
    def _known_axis(cls, name: str) -> str:
        if name not in AXIS_FIELDS:
            raise ValueError(f"unknown axis '{name}', expected one of {sorted(AXIS_FIELDS)}")
        return name

    @field_validator("values")
    @classmethod
    def _sorted_values(cls, values: tuple[float, ...], info: ValidationInfo) -> tuple[float, ...]:
        if any(not math.isfinite(v) for v in values):
            raise ValueError("axis values must be finite")
        values = tuple(sorted(set(values)))
        if info.data.get("name") == "n":
            if any(v != int(v) for v in values):
                raise ValueError("ring counts must be integers")
            values = tuple(float(int(v)) for v in values)
        return values

    @classmethod
    def linspace(cls, name: str, lo: float, hi: float, count: int) -> "AxisSpec":
        return cls(name=name, values=tuple(float(v) for v in np.linspace(lo, hi, count)))

    def typed_values(self) -> list:
        if self.name == "n":
            return [int(v) for v in self.values]
        return list(self.values)

    def __len__(self) -> int:
        return len(self.values)


class SweepCell(BaseModel):
    model_config = ConfigDict(frozen=True)

    x_value: float
    y_value: float
    phi_lp: float = Field(..., gt=0)
    phi_exact: float = Field(..., gt=0)
    structure_ok: bool
    analytic_valid: bool

    @property
    def log10_phi(self) -> float:
        return math.log10(self.phi_lp)


class SweepGrid(BaseModel):
    """cells[i][k] holds x_axis.values[i] x y_axis.values[k]"""
    model_config = ConfigDict(frozen=True)

    base: SystemParams
    x_axis: AxisSpec
    y_axis: AxisSpec
    cells: tuple[tuple[SweepCell, ...], ...]

    @model_validator(mode="after")
    def _dims(self) -> "SweepGrid":
        if len(self.cells) != len(self.x_axis) or any(len(row) != len(self.y_axis) for row in self.cells):
            raise ValueError("cell matrix does not match the axes")
        return self

    def iter_cells(self):
        for row in self.cells:
            yield from row

    def phi_matrix(self) -> np.ndarray:
        return np.array([[cell.phi_lp for cell in row] for row in self.cells])

    def log10_matrix(self) -> np.ndarray:
        return np.log10(self.phi_matrix())

    def cell(self, x_value: float, y_value: float) -> SweepCell:
        i = self.x_axis.values.index(x_value)
        k = self.y_axis.values.index(y_value)
        return self.cells[i][k]


class NodeStudyRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    rel_pos: float
    info_direct: float
    info_stepwise: float
    info_other: float
    info_total: float
    power_direct: float
    power_stepwise: float
    power_total: float
    depl_direct: float
    depl_stepwise: float
    depl_total: float


class NodeStudyTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: SystemParams
    varied: str
    value: float
    phi: float
    rows: tuple[NodeStudyRow, ...]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.rows])


class ScalingRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    d: float
    phi_lp: Optional[float] = None
    phi_exact: Optional[float] = None
    phi_sum: Optional[float] = None
    phi_integral: Optional[float] = None


class ScalingTable(BaseModel):
    """One series of a ring-count study (one beta or gamma value)"""
    model_config = ConfigDict(frozen=True)

    mode: ScalingMode
    series: str
    series_value: float
    area_mode: Optional[AreaMode] = None
    rows: tuple[ScalingRow, ...]

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.rows], dtype=float)


class SolveSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    d: float
    phi_lp: Optional[float] = None
    phi_exact: Optional[float] = None
    phi_sum: Optional[float] = None
    phi_integral: Optional[float] = None
    lifetime: Optional[float] = None
    analytic_valid: Optional[bool] = None
    structure_ok: Optional[bool] = None
    min_total_power: Optional[float] = None
    min_power_phi: Optional[float] = None
