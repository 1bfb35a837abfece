# app/models/run_config.py
import enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .experiments import AreaMode, AxisSpec, ScalingMode
from .params import SystemParams


class Subcommand(str, enum.Enum):
    SOLVE = "solve"
    STUDY = "study"
    HEATMAP = "heatmap"
    SCALING = "scaling"


class Method(str, enum.Enum):
    LP = "lp"
    EXACT = "exact"
    SUM = "sum"
    INTEGRAL = "integral"


METHOD_ORDER: tuple[Method, ...] = (Method.LP, Method.EXACT, Method.SUM, Method.INTEGRAL)


def format_float(value: float) -> str:
    """Shortest text that parses back to the same float"""
    return repr(float(value))


class RunConfig(BaseModel):
    """Fully resolved command line: one subcommand, its parameters and outputs"""
    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    params: SystemParams = Field(default_factory=SystemParams)
    methods: tuple[Method, ...] = METHOD_ORDER
    x_axis: Optional[AxisSpec] = None
    y_axis: Optional[AxisSpec] = None
    out: str = "results/run"
    svg: bool = False
    svg_range: Optional[tuple[float, float]] = None
    area_mode: AreaMode = AreaMode.TEXT
    scaling: ScalingMode = ScalingMode.FIXED_SPACING

    @field_validator("methods")
    @classmethod
    def _canonical_methods(cls, methods: tuple[Method, ...]) -> tuple[Method, ...]:
        return tuple(m for m in METHOD_ORDER if m in methods)

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        if not self.methods:
            raise ValueError("at least one method must be selected")
        if self.subcommand is Subcommand.SOLVE and (self.x_axis or self.y_axis):
            raise ValueError("solve takes no axis specs")
        if self.subcommand is Subcommand.HEATMAP:
            if self.x_axis is None or self.y_axis is None:
                raise ValueError("heatmap needs both --x and --y")
            if len(self.x_axis) < 2 or len(self.y_axis) < 2:
                raise ValueError("heatmap axes need at least two values")
        if self.subcommand is Subcommand.STUDY:
            if self.x_axis is None:
                raise ValueError("study needs --x name:values")
            if self.y_axis is not None:
                raise ValueError("study varies a single parameter")
        if self.subcommand is Subcommand.SCALING:
            if self.x_axis is None or self.x_axis.name != "n":
                raise ValueError("scaling needs --x n:values")
            series = "beta" if self.scaling is ScalingMode.FIXED_SPACING else "gamma"
            if self.y_axis is None or self.y_axis.name != series:
                raise ValueError(f"{self.scaling.value} scaling needs --y {series}:values")
        if self.x_axis and self.y_axis and self.x_axis.name == self.y_axis.name:
            raise ValueError(f"both axes vary '{self.x_axis.name}'")
        if self.svg_range is not None and not self.svg_range[0] < self.svg_range[1]:
            raise ValueError("svg range must satisfy lo < hi")
        return self

    def to_tokens(self) -> list[str]:
        """Flag list that parse_config turns back into this exact config"""
        # flag=value keeps negative numbers from being read as options
        p = self.params
        tokens = [
            self.subcommand.value,
            f"--alpha={format_float(p.alpha)}",
            f"--beta={format_float(p.beta)}",
            f"--gamma={format_float(p.gamma)}",
            f"--lambda={format_float(p.lam)}",
            f"--n={p.n_rings}",
            f"--d={format_float(p.spacing)}",
            f"--normalization={p.normalization.value}",
            "--method=" + ",".join(m.value for m in self.methods),
        ]
        for flag, axis in (("--x", self.x_axis), ("--y", self.y_axis)):
            if axis is not None:
                tokens.append(f"{flag}={axis.name}:" + ",".join(format_float(v) for v in axis.values))
        tokens += [f"--out={self.out}", f"--area-mode={self.area_mode.value}", f"--scaling={self.scaling.value}"]
        if self.svg:
            tokens.append("--svg")
        if self.svg_range is not None:
            tokens.append(f"--svg-range={format_float(self.svg_range[0])}:{format_float(self.svg_range[1])}")
        return tokens
