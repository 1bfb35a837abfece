# app/services/experiment_service.py
from typing import Iterable, Optional, Sequence

from ..config.logging_config import LoggerMixin, log_agreement, log_sweep_progress
from ..config.setting import settings
from ..core import analytic, flow_opt
from ..core.ring_model import build_profile
from ..models.analytic import AnalyticSolution
from ..models.errors import AnalyticDomainError, InconsistencyError
from ..models.experiments import (
    AreaMode,
    AxisSpec,
    NodeStudyRow,
    NodeStudyTable,
    ScalingMode,
    ScalingRow,
    ScalingTable,
    SolveSummary,
    SweepCell,
    SweepGrid,
)
from ..models.flow import FlowSolution
from ..models.lp import LpOptions
from ..models.params import RECOMMENDED_RANGES, SystemParams
from ..models.run_config import METHOD_ORDER, Method


HEATMAP_PRESETS: dict[str, tuple[str, str]] = {
    "alpha-gamma": ("alpha", "gamma"),
    "beta-gamma": ("beta", "gamma"),
    "lambda-gamma": ("lambda", "gamma"),
}

NODE_STUDY_PRESETS: dict[str, tuple[float, ...]] = {
    "alpha": (0.0, 0.5, 3.0),
    "beta": (0.5, 1.0),
    "gamma": (0.0, 3.0),
    "lambda": (1.1, 3.0),
}


def axis_range(name: str) -> tuple[float, float]:
    field = {"lambda": "lam", "n": "n_rings", "d": "spacing"}.get(name, name)
    return RECOMMENDED_RANGES[field]


class ExperimentService(LoggerMixin):
    """
    Runs solves and parameter sweeps, cross-checking the LP optimum against
    the closed form wherever the equal-depletion schedule is feasible.
    """

    def __init__(self, options: Optional[LpOptions] = None):
        super().__init__()
        self.options = options

    def check_agreement(self, label: str, phi_lp: float, solution: AnalyticSolution) -> float:
        """
        Relative LP/closed-form gap; raises when the closed form is valid but
        disagrees beyond AGREEMENT_TOL
        """
        rel = abs(phi_lp - solution.phi) / solution.phi
        log_agreement(label, phi_lp, solution.phi, rel)
        if solution.valid and rel > settings.AGREEMENT_TOL:
            error = InconsistencyError(
                f"{label}: phi_lp={phi_lp!r} vs phi_exact={solution.phi!r} (relative gap {rel:.3e})"
            )
            self.log_service_error("check_agreement", error)
            raise error
        return rel

    def _solve_checked(self, params: SystemParams, label: str) -> tuple[FlowSolution, AnalyticSolution]:
        profile = build_profile(params)
        sol = flow_opt.solve_max_lifetime(profile, self.options)
        closed = analytic.stepwise_flows(profile)
        self.check_agreement(label, sol.phi, closed)
        return sol, closed

    @staticmethod
    def _approximations(params: SystemParams, methods: Iterable[Method]) -> dict[str, Optional[float]]:
        values: dict[str, Optional[float]] = {}
        if Method.SUM in methods:
            values["phi_sum"] = analytic.phi_sum_approx(params)
        if Method.INTEGRAL in methods:
            try:
                values["phi_integral"] = analytic.phi_integral_approx(params)
            except AnalyticDomainError:
                values["phi_integral"] = None
        return values

    def solve(self, params: SystemParams, methods: Sequence[Method] = METHOD_ORDER) -> SolveSummary:
        """All requested routes for one instance, plus the min-power comparison"""
        self.log_service_start("solve", n=params.n_rings, methods=[m.value for m in methods])
        profile = build_profile(params)
        fields: dict = {"n": params.n_rings, "d": params.spacing}

        closed = analytic.stepwise_flows(profile) if Method.EXACT in methods or Method.LP in methods else None
        if Method.EXACT in methods:
            fields.update(phi_exact=closed.phi, analytic_valid=closed.valid)
        if Method.LP in methods:
            sol = flow_opt.solve_max_lifetime(profile, self.options)
            self.check_agreement(f"N={params.n_rings}", sol.phi, closed)
            structure = flow_opt.classify_flows(sol)
            min_power = flow_opt.solve_min_power(profile, self.options)
            fields.update(
                phi_lp=sol.phi,
                lifetime=sol.lifetime,
                structure_ok=structure.is_direct_stepwise_only or closed.valid,
                min_total_power=min_power.total_power,
                min_power_phi=min_power.phi,
            )
        elif closed is not None:
            fields["lifetime"] = closed.lifetime
        fields.update(self._approximations(params, methods))

        summary = SolveSummary(**fields)
        self.log_service_success("solve", f"phi_lp={summary.phi_lp} phi_exact={summary.phi_exact}")
        return summary

    def node_table(self, params: SystemParams, varied: str = "", value: float = 0.0) -> NodeStudyTable:
        """Per-node direct / stepwise information, power and depletion of the LP optimum"""
        sol, _ = self._solve_checked(params, f"{varied}={value}" if varied else "node table")
        n = params.n_rings
        rows = []
        for rec in sol.per_node:
            rows.append(NodeStudyRow(
                j=rec.j,
                rel_pos=rec.j / n,
                info_direct=rec.direct_info,
                info_stepwise=rec.stepwise_info,
                info_other=rec.other_info,
                info_total=rec.total_info,
                power_direct=rec.direct_power,
                power_stepwise=rec.stepwise_power,
                power_total=rec.total_power,
                depl_direct=rec.depl_direct,
                depl_stepwise=rec.depl_stepwise,
                depl_total=rec.depletion_rate,
            ))
        return NodeStudyTable(params=params, varied=varied, value=value, phi=sol.phi, rows=tuple(rows))

    def run_node_study(self, base: SystemParams, varied: str, values: Sequence[float]) -> list[NodeStudyTable]:
        self.log_service_start("run_node_study", varied=varied, values=list(values))
        tables = []
        for done, value in enumerate(values, start=1):
            params = base.with_value(varied, value)
            tables.append(self.node_table(params, varied, float(value)))
            log_sweep_progress(f"study {varied}", done, len(values))
        self.log_service_success("run_node_study", f"{len(tables)} tables")
        return tables

    def run_heatmap(self, base: SystemParams, x_spec: AxisSpec, y_spec: AxisSpec) -> SweepGrid:
        self.log_service_start("run_heatmap", x=x_spec.name, y=y_spec.name)
        total = len(x_spec) * len(y_spec)
        done = 0
        cells = []
        for x_value in x_spec.typed_values():
            row = []
            for y_value in y_spec.typed_values():
                params = base.with_value(x_spec.name, x_value).with_value(y_spec.name, y_value)
                sol, closed = self._solve_checked(params, f"{x_spec.name}={x_value}, {y_spec.name}={y_value}")
                structure = flow_opt.classify_flows(sol)
                row.append(SweepCell(
                    x_value=float(x_value),
                    y_value=float(y_value),
                    phi_lp=sol.phi,
                    phi_exact=closed.phi,
                    structure_ok=structure.is_direct_stepwise_only or closed.valid,
                    analytic_valid=closed.valid,
                ))
                done += 1
            cells.append(tuple(row))
            log_sweep_progress(f"heatmap {x_spec.name}x{y_spec.name}", done, total)
        grid = SweepGrid(base=base, x_axis=x_spec, y_axis=y_spec, cells=tuple(cells))
        self.log_service_success("run_heatmap", f"{total} cells")
        return grid

    def heatmap_preset(self, name: str, resolution: Optional[int] = None) -> tuple[AxisSpec, AxisSpec]:
        """Axes of a named preset over the recommended parameter ranges"""
        if name not in HEATMAP_PRESETS:
            raise ValueError(f"unknown heatmap preset '{name}', expected one of {sorted(HEATMAP_PRESETS)}")
        count = resolution or settings.HEATMAP_RESOLUTION
        return tuple(AxisSpec.linspace(axis, *axis_range(axis), count) for axis in HEATMAP_PRESETS[name])

    def _scaling_row(self, params: SystemParams, methods: Sequence[Method]) -> ScalingRow:
        profile = build_profile(params)
        fields: dict = {"n": params.n_rings, "d": params.spacing}
        if Method.EXACT in methods or Method.LP in methods:
            closed = analytic.stepwise_flows(profile)
            if Method.EXACT in methods:
                fields["phi_exact"] = closed.phi
            if Method.LP in methods:
                sol = flow_opt.solve_max_lifetime(profile, self.options)
                self.check_agreement(f"N={params.n_rings}, d={params.spacing!r}", sol.phi, closed)
                fields["phi_lp"] = sol.phi
        fields.update(self._approximations(params, methods))
        return ScalingRow(**fields)

    def run_scaling_fixed_spacing(self, base: SystemParams, n_values: Sequence[int], beta_values: Sequence[float],
                                  methods: Sequence[Method] = METHOD_ORDER) -> list[ScalingTable]:
        """Ring count sweep at d = 1, one table per compression ratio"""
        self.log_service_start("run_scaling_fixed_spacing", n_values=list(n_values), betas=list(beta_values))
        tables = []
        for beta in beta_values:
            rows = tuple(
                self._scaling_row(base.with_value("beta", beta).with_value("d", 1.0).with_value("n", int(n)), methods)
                for n in n_values
            )
            tables.append(ScalingTable(mode=ScalingMode.FIXED_SPACING, series="beta",
                                       series_value=float(beta), rows=rows))
            log_sweep_progress("scaling fixed-spacing", len(tables), len(beta_values))
        return tables

    def run_scaling_fixed_area(self, base: SystemParams, n_values: Sequence[int], gamma_values: Sequence[float],
                               methods: Sequence[Method] = METHOD_ORDER,
                               area_mode: AreaMode = AreaMode.TEXT) -> list[ScalingTable]:
        """Ring count sweep with the covered radius held fixed, one table per capacity exponent"""
        self.log_service_start("run_scaling_fixed_area", n_values=list(n_values), gammas=list(gamma_values),
                               area_mode=area_mode.value)
        tables = []
        for gamma in gamma_values:
            rows = []
            for n in n_values:
                params = base.with_value("gamma", gamma).with_value("n", int(n))
                rows.append(self._scaling_row(params.with_value("d", area_mode.spacing(int(n))), methods))
            tables.append(ScalingTable(mode=ScalingMode.FIXED_AREA, series="gamma", series_value=float(gamma),
                                       area_mode=area_mode, rows=tuple(rows)))
            log_sweep_progress("scaling fixed-area", len(tables), len(gamma_values))
        return tables


experiment_service = ExperimentService()
