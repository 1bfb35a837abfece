# app/api/cli.py
"""
Command-line surface: parse flags (over an optional key = value file, over
the baseline parameters) into a RunConfig and dispatch it.
"""
import argparse
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from loguru import logger
from pydantic import ValidationError

from ..config.setting import settings
from ..core import analytic
from ..core.ring_model import build_profile
from ..middleware.validation import ConfigValidation
from ..models.errors import ConfigError
from ..models.experiments import AreaMode, AxisSpec, ScalingMode
from ..models.params import Normalization, SystemParams
from ..models.run_config import RunConfig, Subcommand
from ..services.experiment_service import HEATMAP_PRESETS, NODE_STUDY_PRESETS, experiment_service
from ..utilities.helpers import data_formatters as fmt
from ..utilities.helpers.csv_writer import emit_csv
from ..utilities.helpers.heatmap_svg import render_heatmap_svg


# Flag / config key -> SystemParams field
PARAM_KEYS = {
    "alpha": "alpha",
    "beta": "beta",
    "gamma": "gamma",
    "lambda": "lambda",
    "n": "n_rings",
    "d": "spacing",
    "normalization": "normalization",
}

SCALING_PRESETS: Dict[ScalingMode, tuple[str, str]] = {
    ScalingMode.FIXED_SPACING: ("n:" + ",".join(str(n) for n in range(1, 21)), "beta:0.95,1"),
    ScalingMode.FIXED_AREA: ("n:" + ",".join(str(n) for n in range(1, 21)), "gamma:1,1.5,2"),
}


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises ConfigError instead of exiting"""

    def error(self, message: str):
        raise ConfigError(message)


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="ring-lifetime-flow",
        description=settings.DESCRIPTION,
        allow_abbrev=False,
    )
    parser.add_argument("subcommand", choices=[s.value for s in Subcommand])

    params = parser.add_argument_group("model parameters")
    params.add_argument("--alpha", help="information density exponent")
    params.add_argument("--beta", help="compression ratio in (0, 1]")
    params.add_argument("--gamma", help="energy capacity exponent")
    params.add_argument("--lambda", dest="lambda_", help="transmission power exponent (> 1)")
    params.add_argument("--n", help="number of rings")
    params.add_argument("--d", help="ring spacing")
    params.add_argument("--normalization", choices=[m.value for m in Normalization])

    runs = parser.add_argument_group("run")
    runs.add_argument("--method", help="comma separated subset of lp,exact,sum,integral")
    runs.add_argument("--x", help="axis spec name:lo:hi:count or name:v1,v2,...")
    runs.add_argument("--y", help="second axis spec")
    runs.add_argument("--preset", help="named heatmap, study or scaling axes")
    runs.add_argument("--scaling", choices=[m.value for m in ScalingMode])
    runs.add_argument("--area-mode", dest="area_mode", choices=[m.value for m in AreaMode])
    runs.add_argument("--config", help="key = value file; flags take precedence")

    output = parser.add_argument_group("output")
    output.add_argument("--out", help="output path prefix")
    output.add_argument("--svg", action="store_const", const="true", help="also render the heatmap as SVG")
    output.add_argument("--svg-range", dest="svg_range", help="fixed log10(phi) colour range lo:hi")
    return parser


def _merged_values(namespace: argparse.Namespace, file_values: Dict[str, str]) -> Dict[str, str]:
    """Flags override file values; keys absent from both are left out"""
    merged = dict(file_values)
    flag_values = {
        "alpha": namespace.alpha,
        "beta": namespace.beta,
        "gamma": namespace.gamma,
        "lambda": namespace.lambda_,
        "n": namespace.n,
        "d": namespace.d,
        "normalization": namespace.normalization,
        "method": namespace.method,
        "x": namespace.x,
        "y": namespace.y,
        "preset": namespace.preset,
        "scaling": namespace.scaling,
        "area_mode": namespace.area_mode,
        "out": namespace.out,
        "svg": namespace.svg,
        "svg_range": namespace.svg_range,
    }
    merged.update({key: value for key, value in flag_values.items() if value is not None})
    return merged


def _error_text(exc: ValidationError) -> str:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "value"
    return f"{location}: {first['msg']}"


def _params(values: Dict[str, str]) -> SystemParams:
    data = {field: values[key] for key, field in PARAM_KEYS.items() if key in values}
    try:
        return SystemParams.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid parameter {_error_text(exc)}") from None


def _check_axis_values(config: RunConfig) -> None:
    """Every swept value must itself be a valid parameter"""
    for axis in (config.x_axis, config.y_axis):
        if axis is None:
            continue
        for value in axis.values:
            try:
                config.params.with_value(axis.name, value)
            except ValidationError as exc:
                raise ConfigError(f"invalid {axis.name} value {value:g} on axis: {_error_text(exc)}") from None


def _preset_axes(subcommand: Subcommand, preset: str, scaling: ScalingMode) -> tuple[AxisSpec, Optional[AxisSpec]]:
    if subcommand is Subcommand.HEATMAP:
        try:
            return experiment_service.heatmap_preset(preset)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    if subcommand is Subcommand.STUDY:
        if preset not in NODE_STUDY_PRESETS:
            raise ConfigError(f"unknown study preset '{preset}', expected one of {sorted(NODE_STUDY_PRESETS)}")
        return AxisSpec(name=preset, values=NODE_STUDY_PRESETS[preset]), None
    if subcommand is Subcommand.SCALING:
        if preset != "figure":
            raise ConfigError(f"unknown scaling preset '{preset}', expected 'figure'")
        x_text, y_text = SCALING_PRESETS[scaling]
        return ConfigValidation.parse_axis_spec(x_text), ConfigValidation.parse_axis_spec(y_text)
    raise ConfigError("solve takes no preset")


def parse_config(args: Sequence[str], file_text: Optional[str] = None) -> RunConfig:
    """
    Resolve a token list into a RunConfig. file_text stands in for the
    contents of --config when given.
    """
    namespace = build_parser().parse_args(list(args))
    if file_text is None and namespace.config:
        try:
            file_text = Path(namespace.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {namespace.config}: {exc}") from None
    values = _merged_values(namespace, ConfigValidation.parse_config_file(file_text))

    subcommand = Subcommand(namespace.subcommand)
    fields: dict = {"subcommand": subcommand, "params": _params(values)}
    try:
        scaling = ScalingMode(values.get("scaling", ScalingMode.FIXED_SPACING.value))
        area_mode = AreaMode(values.get("area_mode", AreaMode.TEXT.value))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    fields.update(scaling=scaling, area_mode=area_mode)

    if "method" in values:
        fields["methods"] = ConfigValidation.parse_methods(values["method"])
    x_axis = ConfigValidation.parse_axis_spec(values["x"]) if "x" in values else None
    y_axis = ConfigValidation.parse_axis_spec(values["y"]) if "y" in values else None
    if "preset" in values:
        preset_x, preset_y = _preset_axes(subcommand, values["preset"], scaling)
        x_axis = x_axis or preset_x
        y_axis = y_axis or preset_y
    fields.update(x_axis=x_axis, y_axis=y_axis)

    fields["out"] = values.get("out", f"{settings.OUTPUT_DIR}/run")
    if "svg" in values:
        fields["svg"] = ConfigValidation.parse_bool(values["svg"], "svg")
    if "svg_range" in values:
        fields["svg_range"] = ConfigValidation.parse_svg_range(values["svg_range"])

    try:
        config = RunConfig(**fields)
    except ValidationError as exc:
        raise ConfigError(_error_text(exc)) from None
    _check_axis_values(config)
    logger.debug(f"Resolved run config: {config.to_tokens()}")
    return config


def dispatch(config: RunConfig) -> List[Path]:
    """Run the configured subcommand and return the files written"""
    tokens = config.to_tokens()
    out = config.out
    written: List[Path] = []

    if config.subcommand is Subcommand.SOLVE:
        summary = experiment_service.solve(config.params, config.methods)
        written.append(emit_csv(fmt.SOLVE_HEADER, fmt.solve_rows(summary), f"{out}.csv", tokens))
        profile = build_profile(config.params)
        powers = [analytic.min_power_node(profile, j) for j in range(1, profile.n + 1)]
        written.append(emit_csv(fmt.MIN_POWER_HEADER, fmt.min_power_rows(powers), f"{out}_min_power.csv", tokens))

    elif config.subcommand is Subcommand.STUDY:
        axis = config.x_axis
        for table in experiment_service.run_node_study(config.params, axis.name, axis.typed_values()):
            path = f"{out}_{fmt.series_suffix(axis.name, table.value)}.csv"
            written.append(emit_csv(fmt.NODE_STUDY_HEADER, fmt.node_study_rows(table), path, tokens))

    elif config.subcommand is Subcommand.HEATMAP:
        grid = experiment_service.run_heatmap(config.params, config.x_axis, config.y_axis)
        written.append(emit_csv(fmt.HEATMAP_HEADER, fmt.heatmap_rows(grid), f"{out}.csv", tokens))
        if config.svg:
            written.append(render_heatmap_svg(grid, f"{out}.svg", config.svg_range))

    elif config.subcommand is Subcommand.SCALING:
        n_values = config.x_axis.typed_values()
        series = config.y_axis.values
        if config.scaling is ScalingMode.FIXED_SPACING:
            tables = experiment_service.run_scaling_fixed_spacing(config.params, n_values, series, config.methods)
        else:
            tables = experiment_service.run_scaling_fixed_area(config.params, n_values, series, config.methods,
                                                               config.area_mode)
        for table in tables:
            path = f"{out}_{fmt.series_suffix(table.series, table.series_value)}.csv"
            written.append(emit_csv(fmt.SCALING_HEADER, fmt.scaling_rows(table), path, tokens))

    return written
