# app/config/settings/base.py
import pathlib
from decouple import config
from pydantic_settings import BaseSettings
from typing import Optional

ROOT_DIR: pathlib.Path = pathlib.Path(__file__).parent.parent.parent.parent.resolve()

class BackendBaseSettings(BaseSettings):
    """
    Base settings - single source of truth for solver tolerances, experiment
    defaults and output formatting. Environment-specific classes override it.
    """

    # Application Metadata
    TITLE: str = "Ring Lifetime Flow"
    VERSION: str = "1.0.0"
    DESCRIPTION: Optional[str] = "Max-lifetime and min-power flow schedules for ring-sector sensor networks"
    DEBUG: bool = config("DEBUG", default=False, cast=bool)

    # Logging Configuration
    LOG_LEVEL: str = config("LOG_LEVEL", default="INFO")
    LOG_DIR: Optional[str] = config("LOG_DIR", default=None)

    # Simplex Configuration
    LP_PIVOT_TOL: float = config("LP_PIVOT_TOL", default=1e-10, cast=float)
    LP_FEASIBILITY_TOL: float = config("LP_FEASIBILITY_TOL", default=1e-9, cast=float)
    LP_BLAND_SWITCH_FACTOR: int = config("LP_BLAND_SWITCH_FACTOR", default=3, cast=int)
    LP_ITERATION_FACTOR: int = config("LP_ITERATION_FACTOR", default=10, cast=int)

    # Analytic / cross-check tolerances
    ANALYTIC_FEASIBILITY_TOL: float = config("ANALYTIC_FEASIBILITY_TOL", default=1e-9, cast=float)
    AGREEMENT_TOL: float = config("AGREEMENT_TOL", default=1e-6, cast=float)
    CLASSIFY_TOL_FACTOR: float = config("CLASSIFY_TOL_FACTOR", default=1e-6, cast=float)
    BRANCH_EQUALITY_TOL: float = config("BRANCH_EQUALITY_TOL", default=1e-12, cast=float)

    # Experiment / output Configuration
    HEATMAP_RESOLUTION: int = config("HEATMAP_RESOLUTION", default=13, cast=int)
    CSV_SIGNIFICANT_DIGITS: int = config("CSV_SIGNIFICANT_DIGITS", default=12, cast=int)
    SVG_COLORMAP: str = config("SVG_COLORMAP", default="viridis")
    OUTPUT_DIR: str = config("OUTPUT_DIR", default="results")

    class Config:
        case_sensitive: bool = True
        env_file: str = f"{str(ROOT_DIR)}/.env"
        env_file_encoding: str = "utf-8"
        validate_assignment: bool = True
        extra: str = "ignore"
