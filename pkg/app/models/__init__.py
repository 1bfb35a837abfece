# app/models/__init__.py
from .params import SystemParams, NodeProfile, Normalization
from .lp import LpProblem, LpSolution, LpStatus, LpOptions, ResidualReport
from .flow import FlowSolution, NodeFlow, ObjectiveKind, StructureReport
from .analytic import AnalyticSolution
from .run_config import RunConfig, Subcommand, Method

__all__ = [
    "SystemParams", "NodeProfile", "Normalization",
    "LpProblem", "LpSolution", "LpStatus", "LpOptions", "ResidualReport",
    "FlowSolution", "NodeFlow", "ObjectiveKind", "StructureReport",
    "AnalyticSolution",
    "RunConfig", "Subcommand", "Method",
]
