# app/utilities/helpers/data_formatters.py
from typing import Any, Iterable, List, Optional

from app.config.setting import settings
from app.models.experiments import NodeStudyTable, ScalingTable, SolveSummary, SweepGrid


NODE_STUDY_HEADER = [
    "j", "rel_pos", "info_direct", "info_stepwise", "info_other", "info_total",
    "power_direct", "power_stepwise", "power_total", "depl_direct", "depl_stepwise", "depl_total",
]
SCALING_HEADER = ["N", "d", "phi_lp", "phi_exact", "phi_sum", "phi_integral"]
HEATMAP_HEADER = ["x_value", "y_value", "phi_lp", "log10_phi", "structure_ok", "analytic_valid"]
SOLVE_HEADER = [
    "N", "d", "phi_lp", "phi_exact", "phi_sum", "phi_integral", "lifetime",
    "analytic_valid", "structure_ok", "min_total_power", "min_power_phi",
]


def format_number(value: Any, digits: Optional[int] = None) -> str:
    """
    Render one CSV field: floats with a fixed count of significant digits,
    booleans as true/false, absent values as an empty field
    """
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    digits = digits or settings.CSV_SIGNIFICANT_DIGITS
    return f"{float(value):#.{digits}g}"


def format_row(values: Iterable[Any], digits: Optional[int] = None) -> List[str]:
    return [format_number(v, digits) for v in values]


def solve_rows(summary: SolveSummary) -> List[List[str]]:
    """Single data row of a solve run"""
    return [format_row([
        summary.n, summary.d, summary.phi_lp, summary.phi_exact, summary.phi_sum,
        summary.phi_integral, summary.lifetime, summary.analytic_valid, summary.structure_ok,
        summary.min_total_power, summary.min_power_phi,
    ])]


def node_study_rows(table: NodeStudyTable) -> List[List[str]]:
    return [format_row([getattr(row, name) for name in NODE_STUDY_HEADER]) for row in table.rows]


def scaling_rows(table: ScalingTable) -> List[List[str]]:
    return [
        format_row([row.n, row.d, row.phi_lp, row.phi_exact, row.phi_sum, row.phi_integral])
        for row in table.rows
    ]


def heatmap_rows(grid: Optional[SweepGrid]) -> List[List[str]]:
    """Cells in x-major order; an absent grid gives no rows"""
    if grid is None:
        return []
    return [
        format_row([cell.x_value, cell.y_value, cell.phi_lp, cell.log10_phi, cell.structure_ok, cell.analytic_valid])
        for cell in grid.iter_cells()
    ]


def series_suffix(name: str, value: float) -> str:
    """File-name fragment for one series value, e.g. beta0.95"""
    return f"{name}{float(value):g}"


MIN_POWER_HEADER = ["j", "min_power"]


def min_power_rows(node_powers: Iterable[float]) -> List[List[str]]:
    """Per-node power of the unit-step chain, nodes numbered from 1"""
    return [format_row([j, power]) for j, power in enumerate(node_powers, start=1)]
